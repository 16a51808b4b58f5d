#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace trapexp {

using Complex = std::complex<double>;

/// Uniform periodic grid x_j = -half_width + j dx, j = 0..n_points-1,
/// with dx * n_points = 2 half_width. Lengths in units of a0.
struct SpatialGrid {
  std::size_t n_points = 4096;
  double half_width = 40.0;

  /// n_points >= 256 and a power of two, half_width > 0; throws GridError.
  void validate() const;

  double dx() const { return 2.0 * half_width / static_cast<double>(n_points); }
  double x(std::size_t j) const { return -half_width + static_cast<double>(j) * dx(); }
  std::vector<double> positions() const;
  /// Angular wavenumbers in FFT storage order.
  std::vector<double> wavenumbers() const;

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;
};

struct WaveFunction {
  SpatialGrid grid;
  std::vector<Complex> amplitudes;

  double norm() const;  // sum |psi|^2 dx
  void normalize();
};

/// <a|b> = sum conj(a) b dx. Throws ContractError on grid mismatch.
Complex inner_product(const WaveFunction& a, const WaveFunction& b);

}  // namespace trapexp
