#pragma once

#include <span>
#include <vector>

namespace trapexp {

/// Normalised Hermite functions phi_0..phi_nmax at y:
/// phi_k(y) = (2^k k! sqrt(pi))^{-1/2} H_k(y) exp(-y^2 / 2).
std::vector<double> hermite_functions(int nmax, double y);

/// Physicists' Hermite polynomial H_n(y) by the three-term recurrence.
double hermite_polynomial(int n, double y);

/// Gauss-Hermite rule for weight exp(-y^2) from the Jacobi matrix eigenproblem.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int order);

}  // namespace trapexp
