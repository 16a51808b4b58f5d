#include "trapexp/hermite.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace trapexp {

std::vector<double> hermite_functions(int nmax, double y) {
  std::vector<double> phi(static_cast<std::size_t>(nmax) + 1);
  phi[0] = std::exp(-0.5 * y * y) / std::sqrt(std::sqrt(std::numbers::pi));
  if (nmax >= 1) phi[1] = std::sqrt(2.0) * y * phi[0];
  for (int k = 1; k < nmax; ++k) {
    phi[k + 1] = std::sqrt(2.0 / (k + 1)) * y * phi[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * phi[k - 1];
  }
  return phi;
}

double hermite_polynomial(int n, double y) {
  if (n == 0) return 1.0;
  double h0 = 1.0;
  double h1 = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * y * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

namespace {

// Orthonormal Hermite polynomials p_0..p_order at y (weight exp(-y^2)).
std::vector<double> orthonormal_hermite(int order, double y) {
  std::vector<double> p(static_cast<std::size_t>(order) + 1);
  p[0] = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  if (order >= 1) p[1] = std::sqrt(2.0) * y * p[0];
  for (int k = 1; k < order; ++k) {
    p[k + 1] = std::sqrt(2.0 / (k + 1)) * y * p[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * p[k - 1];
  }
  return p;
}

}  // namespace

GaussHermiteRule gauss_hermite(int order) {
  // Golub-Welsch eigenvalues as starting nodes, polished by Newton on p_order;
  // weights from the Christoffel function 1 / sum_k p_k(y)^2.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double y = solver.eigenvalues()(i);
    for (int iter = 0; iter < 5; ++iter) {
      const auto p = orthonormal_hermite(order, y);
      const double derivative = std::sqrt(2.0 * order) * p[order - 1];
      y -= p[order] / derivative;
    }
    const auto p = orthonormal_hermite(order - 1, y);
    double christoffel = 0.0;
    for (double v : p) christoffel += v * v;
    rule.nodes[i] = y;
    rule.weights[i] = 1.0 / christoffel;
  }
  return rule;
}

}  // namespace trapexp
