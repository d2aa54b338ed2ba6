#include "nlsim/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace nlsim {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Plan cache keyed by (dim, points, sign). Plans are created with
// FFTW_UNALIGNED so they can be executed on any buffer via fftw_execute_dft.
// Planner access is serialized; execution on distinct buffers is thread-safe.
class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  void execute(int dim, int points, int sign, const std::complex<double>* in,
               std::complex<double>* out) {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto key = std::make_tuple(dim, points, sign);
      auto it = plans_.find(key);
      if (it == plans_.end()) {
        std::size_t n = 1;
        std::vector<int> dims(dim, points);
        for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points);
        std::vector<std::complex<double>> dummy(n);
        plan = fftw_plan_dft(dim, dims.data(),
                             reinterpret_cast<fftw_complex*>(dummy.data()),
                             reinterpret_cast<fftw_complex*>(dummy.data()), sign,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
      } else {
        plan = it->second;
      }
    }
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(
                         const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

}  // namespace

Grid::Grid(int dim, int points, double half_width)
    : dim_(dim), points_(points), half_width_(half_width) {
  if (dim < 1 || dim > 3)
    throw ConfigError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (points < 8 || !is_pow2(points))
    throw ConfigError("grid points must be a power of two >= 8, got " +
                      std::to_string(points));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ConfigError("grid half_width must be positive and finite");

  spacing_ = 2.0 * half_width / points;
  cell_volume_ = 1.0;
  size_ = 1;
  for (int a = 0; a < dim; ++a) {
    cell_volume_ *= spacing_;
    size_ *= static_cast<std::size_t>(points);
  }
  // row-major: last axis is contiguous
  std::size_t stride = 1;
  for (int a = dim - 1; a >= 0; --a) {
    strides_[a] = stride;
    stride *= static_cast<std::size_t>(points);
  }

  coords_.resize(points);
  for (int j = 0; j < points; ++j) coords_[j] = -half_width + j * spacing_;

  const double dk = std::numbers::pi / half_width;
  freqs_.resize(points);
  for (int m = 0; m < points; ++m)
    freqs_[m] = dk * (m < points / 2 ? m : m - points);
}

Grid make_grid(int dim, int points, double half_width) {
  return Grid(dim, points, half_width);
}

Field zeros(const Grid& g) {
  return Field{std::make_shared<const Grid>(g),
               std::vector<std::complex<double>>(g.size())};
}

Field zeros(std::shared_ptr<const Grid> g) {
  auto n = g->size();
  return Field{std::move(g), std::vector<std::complex<double>>(n)};
}

Field zeros_like(const Field& f) { return zeros(f.grid); }

bool all_finite(const Field& f) {
  return std::all_of(f.values.begin(), f.values.end(), [](std::complex<double> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

void require_finite(const Field& f) {
  if (!all_finite(f)) throw std::runtime_error("field contains non-finite values");
}

Spectrum transform(const Field& u) {
  Spectrum s{u.grid, std::vector<std::complex<double>>(u.values.size())};
  PlanCache::instance().execute(u.grid->dim(), u.grid->points(), FFTW_FORWARD,
                                u.values.data(), s.values.data());
  return s;
}

Field inverse_transform(const Spectrum& s) {
  Field u{s.grid, std::vector<std::complex<double>>(s.values.size())};
  PlanCache::instance().execute(s.grid->dim(), s.grid->points(), FFTW_BACKWARD,
                                s.values.data(), u.values.data());
  const double scale = 1.0 / static_cast<double>(s.grid->size());
  for (auto& z : u.values) z *= scale;
  return u;
}

std::vector<Field> gradient(const Field& u) {
  const Grid& g = *u.grid;
  const Spectrum hat = transform(u);
  const double nyquist = -std::numbers::pi * g.points() / (2.0 * g.half_width());

  std::vector<Field> out;
  out.reserve(g.dim());
  for (int a = 0; a < g.dim(); ++a) {
    Spectrum da{u.grid, std::vector<std::complex<double>>(hat.values.size())};
    for (std::size_t i = 0; i < hat.values.size(); ++i) {
      const double k = g.freq(i, a);
      da.values[i] = (k == nyquist)
                         ? std::complex<double>(0.0, 0.0)
                         : std::complex<double>(0.0, k) * hat.values[i];
    }
    out.push_back(inverse_transform(da));
  }
  return out;
}

std::vector<Field> multiply_by_x(const Field& u) {
  const Grid& g = *u.grid;
  std::vector<Field> out;
  out.reserve(g.dim());
  for (int a = 0; a < g.dim(); ++a) {
    Field xa = zeros_like(u);
    for (std::size_t i = 0; i < u.values.size(); ++i)
      xa.values[i] = g.coord(i, a) * u.values[i];
    out.push_back(std::move(xa));
  }
  return out;
}

double integrate(const Grid& g, std::span<const double> density) {
  double s = 0.0;
  for (double v : density) s += v;
  return g.cell_volume() * s;
}

double l2_norm_sq(const Field& u) {
  double s = 0.0;
  for (const auto& z : u.values) s += std::norm(z);
  return u.grid->cell_volume() * s;
}

double l2_norm(const Field& u) { return std::sqrt(l2_norm_sq(u)); }

double l2_distance(const Field& a, const Field& b) {
  if (!(*a.grid == *b.grid))
    throw std::invalid_argument("l2_distance: fields live on different grids");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(a.grid->cell_volume() * s);
}

double max_abs(const Field& u) {
  double m = 0.0;
  for (const auto& z : u.values) m = std::max(m, std::abs(z));
  return m;
}

std::complex<double> inner(const Field& f, const Field& g) {
  if (!(*f.grid == *g.grid))
    throw std::invalid_argument("inner: fields live on different grids");
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    s += f.values[i] * std::conj(g.values[i]);
  return f.grid->cell_volume() * s;
}

}  // namespace nlsim
