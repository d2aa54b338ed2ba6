#pragma once

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace nlsim {

/// Error thrown for invalid run parameters (grid sizes, exponents, config keys).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Uniform periodic box [-L, L)^dim with N points per axis.
///
/// Conventions, fixed project-wide:
///   - coordinates      x_j = -L + j*dx,  dx = 2L/N
///   - frequencies      k_m = (pi/L) * m for m in FFT order
///                      {0, 1, ..., N/2-1, -N/2, ..., -1}; zero appears once
///                      per axis and the Nyquist mode carries the negative sign
///   - forward transform is the plain (unnormalized) DFT, the inverse carries
///     the 1/N factor per axis; discrete Parseval then reads
///         dx^n * sum |u|^2 == dx^n / N^n * sum |u_hat|^2
///   - quadrature is the rectangle rule dx^n * sum, spectrally accurate for
///     smooth fields that decay inside the box
class Grid {
public:
  Grid(int dim, int points, double half_width);

  int dim() const { return dim_; }
  int points() const { return points_; }
  double half_width() const { return half_width_; }
  double spacing() const { return spacing_; }
  double cell_volume() const { return cell_volume_; }
  std::size_t size() const { return size_; }

  /// Coordinates along one axis (identical for every axis), length N.
  const std::vector<double>& axis_coords() const { return coords_; }
  /// Angular frequencies along one axis in FFT order, length N.
  const std::vector<double>& axis_freqs() const { return freqs_; }

  /// Index along `axis` of the row-major linear index `i`.
  int axis_index(std::size_t i, int axis) const {
    return static_cast<int>(i / strides_[axis]) % points_;
  }
  double coord(std::size_t i, int axis) const { return coords_[axis_index(i, axis)]; }
  double freq(std::size_t i, int axis) const { return freqs_[axis_index(i, axis)]; }

  /// |k|^2 at linear index i.
  double freq_sq(std::size_t i) const {
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) {
      const double k = freq(i, a);
      s += k * k;
    }
    return s;
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_ && a.half_width_ == b.half_width_;
  }

private:
  int dim_;
  int points_;
  double half_width_;
  double spacing_;
  double cell_volume_;
  std::size_t size_;
  std::vector<double> coords_;
  std::vector<double> freqs_;
  std::size_t strides_[3] = {0, 0, 0};
};

Grid make_grid(int dim, int points, double half_width);

/// Complex-valued function sampled on a Grid, row-major over axes.
struct Field {
  std::shared_ptr<const Grid> grid;
  std::vector<std::complex<double>> values;
};

/// Fourier-side counterpart of a Field; same storage layout, FFT frequency order.
struct Spectrum {
  std::shared_ptr<const Grid> grid;
  std::vector<std::complex<double>> values;
};

Field zeros(const Grid& g);
Field zeros(std::shared_ptr<const Grid> g);
Field zeros_like(const Field& f);

bool all_finite(const Field& f);
/// Throws std::runtime_error if the field contains NaN/Inf.
void require_finite(const Field& f);

Spectrum transform(const Field& u);
Field inverse_transform(const Spectrum& s);

/// Spectral gradient, one component per axis. The (unpaired) Nyquist mode is
/// zeroed so the derivative of a real field stays real.
std::vector<Field> gradient(const Field& u);

/// Component j is x_j * u pointwise.
std::vector<Field> multiply_by_x(const Field& u);

/// Rectangle rule dx^n * sum(density).
double integrate(const Grid& g, std::span<const double> density);

/// dx^n * sum |u|^2.
double l2_norm_sq(const Field& u);
double l2_norm(const Field& u);
double l2_distance(const Field& a, const Field& b);
double max_abs(const Field& u);

/// L2 scalar product (f, g) = dx^n * sum f * conj(g).
std::complex<double> inner(const Field& f, const Field& g);

}  // namespace nlsim
