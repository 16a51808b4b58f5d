#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <span>
#include <vector>

namespace trapexp {

/// Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration on P_n.
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  template <class F>
  auto integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    decltype(f(mid)) sum{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      sum += weights_[i] * f(mid + half * nodes_[i]);
    }
    return sum * half;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Shared 32-point rule.
const GaussLegendre& gauss_legendre_32();

struct QuadratureOptions {
  double tolerance = 1e-10;  // on the change between successive refinements
  double max_panel = 0.5;    // initial panel length
  int max_doublings = 14;
};

/// Splits [breaks.front(), breaks.back()] at every break, then panels of at most
/// max_panel; returns the sorted panel edges.
std::vector<double> make_panels(std::span<const double> breaks, double max_panel);

/// Halves every panel.
std::vector<double> refine_panels(std::span<const double> edges);

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }
}  // namespace detail

/// Composite 32-point Gauss-Legendre over panels split at `breaks`. Panels are
/// doubled until the estimate changes by less than tolerance * max(1, |I|), or
/// by less than the summation roundoff of the current panel count.
template <class F>
auto integrate_composite(F&& f, std::span<const double> breaks, QuadratureOptions options = {}) {
  const auto& rule = gauss_legendre_32();
  auto edges = make_panels(breaks, options.max_panel);
  auto sweep = [&](const std::vector<double>& e) {
    decltype(f(e.front())) total{};
    for (std::size_t i = 0; i + 1 < e.size(); ++i) total += rule.integrate(f, e[i], e[i + 1]);
    return total;
  };
  auto previous = sweep(edges);
  for (int k = 0; k < options.max_doublings; ++k) {
    edges = refine_panels(edges);
    auto current = sweep(edges);
    const double change = detail::magnitude(current - previous);
    previous = current;
    const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(edges.size());
    if (change < std::max(options.tolerance, roundoff) * std::max(1.0, detail::magnitude(current))) break;
  }
  return previous;
}

}  // namespace trapexp
