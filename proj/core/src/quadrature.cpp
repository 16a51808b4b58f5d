#include "trapexp/quadrature.hpp"

#include <numbers>

namespace trapexp {

GaussLegendre::GaussLegendre(int order) : nodes_(order), weights_(order) {
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
}

const GaussLegendre& gauss_legendre_32() {
  static const GaussLegendre rule(32);
  return rule;
}

std::vector<double> make_panels(std::span<const double> breaks, double max_panel) {
  std::vector<double> edges;
  if (breaks.empty()) return edges;
  edges.push_back(breaks.front());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b > a)) continue;
    const int count = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
    for (int k = 1; k < count; ++k) edges.push_back(a + (b - a) * k / count);
    edges.push_back(b);
  }
  return edges;
}

std::vector<double> refine_panels(std::span<const double> edges) {
  std::vector<double> out;
  out.reserve(edges.size() * 2);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    out.push_back(edges[i]);
    out.push_back(0.5 * (edges[i] + edges[i + 1]));
  }
  if (!edges.empty()) out.push_back(edges.back());
  return out;
}

}  // namespace trapexp
