#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "trapexp/quadrature.hpp"

using namespace trapexp;

TEST_CASE("32-point Gauss-Legendre integrates polynomials up to degree 63 exactly") {
  const auto& rule = gauss_legendre_32();
  double wsum = 0.0;
  for (double w : rule.weights()) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
  for (int p : {0, 2, 10, 40, 62}) {
    const double v = rule.integrate([p](double x) { return std::pow(x, p); }, -1.0, 1.0);
    CHECK(v == doctest::Approx(2.0 / (p + 1)).epsilon(1e-14));
  }
}

TEST_CASE("composite rule splits at breakpoints of a kinked integrand") {
  const std::vector<double> breaks{0.0, 1.3, 4.0};
  auto f = [](double x) { return x < 1.3 ? std::exp(x) : std::exp(1.3) * std::cos(x - 1.3); };
  const double v = integrate_composite(f, breaks);
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.3) +
                        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 1.3, 4.0);
  CHECK(v == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("composite rule handles complex oscillatory integrands") {
  const std::vector<double> breaks{0.0, 20.0};
  const auto v = integrate_composite([](double t) { return std::polar(1.0, -2.0 * t); }, breaks);
  const std::complex<double> exact = (1.0 - std::polar(1.0, -40.0)) / std::complex<double>(0.0, 2.0);
  CHECK(std::abs(v - exact) < 1e-13);
}
