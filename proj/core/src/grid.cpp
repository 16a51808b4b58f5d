#include "trapexp/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "trapexp/error.hpp"

namespace trapexp {

void SpatialGrid::validate() const {
  const bool pow2 = n_points != 0 && (n_points & (n_points - 1)) == 0;
  if (n_points < 256 || !pow2) {
    throw GridError("grid n_points must be a power of two >= 256, got " +
                    std::to_string(n_points));
  }
  if (!(half_width > 0.0)) throw GridError("grid half_width must be positive");
}

std::vector<double> SpatialGrid::positions() const {
  std::vector<double> out(n_points);
  for (std::size_t j = 0; j < n_points; ++j) out[j] = x(j);
  return out;
}

std::vector<double> SpatialGrid::wavenumbers() const {
  std::vector<double> k(n_points);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n_points) * dx());
  const auto n = static_cast<std::ptrdiff_t>(n_points);
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    k[static_cast<std::size_t>(j)] = dk * static_cast<double>(j < n / 2 ? j : j - n);
  }
  return k;
}

double WaveFunction::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum * grid.dx();
}

void WaveFunction::normalize() {
  const double scale = 1.0 / std::sqrt(norm());
  for (auto& a : amplitudes) a *= scale;
}

Complex inner_product(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid == b.grid) || a.amplitudes.size() != b.amplitudes.size()) {
    throw ContractError("inner product of wave functions on different grids");
  }
  Complex sum{};
  for (std::size_t j = 0; j < a.amplitudes.size(); ++j) {
    sum += std::conj(a.amplitudes[j]) * b.amplitudes[j];
  }
  return sum * a.grid.dx();
}

}  // namespace trapexp
