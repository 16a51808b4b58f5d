// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <complex>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

/// Coefficients of the physicists' Hermite polynomial H_n, lowest power first.
inline std::vector<Big> hermite_coefficients(int n) {
  std::vector<Big> prev{Big(1)};
  if (n == 0) return prev;
  std::vector<Big> cur{Big(0), Big(2)};
  for (int k = 1; k < n; ++k) {
    std::vector<Big> next(k + 2, Big(0));
    for (int j = 0; j <= k; ++j) next[j + 1] += 2 * cur[j];
    for (int j = 0; j < k; ++j) next[j] -= 2 * k * prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// integral of exp(-y^2) H_n H_m y^4 from Gaussian moments Gamma(k + 1/2).
inline double alpha_by_moments(int n, int m) {
  const auto hn = hermite_coefficients(n);
  const auto hm = hermite_coefficients(m);
  Big total = 0;
  for (std::size_t i = 0; i < hn.size(); ++i) {
    for (std::size_t j = 0; j < hm.size(); ++j) {
      const int power = static_cast<int>(i + j) + 4;
      if (power % 2 != 0) continue;
      total += hn[i] * hm[j] * boost::math::tgamma(Big(power / 2) + Big(0.5));
    }
  }
  return static_cast<double>(total);
}

/// Adaptive Gauss-Kronrod over [a, b].
template <class F>
double adaptive(F f, double a, double b, double tol = 1e-14) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  return GK::integrate(f, a, b, 20, tol);
}

/// Adaptive integral over [a, b] split at the given interior points.
template <class F>
double adaptive_split(F f, double a, double b, const std::vector<double>& cuts, double tol = 1e-14) {
  double total = 0.0;
  double left = a;
  for (double c : cuts) {
    if (c <= left || c >= b) continue;
    total += adaptive(f, left, c, tol);
    left = c;
  }
  return total + adaptive(f, left, b, tol);
}

}  // namespace oracle
