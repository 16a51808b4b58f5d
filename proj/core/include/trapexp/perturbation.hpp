#pragma once

#include <optional>

#include "trapexp/control.hpp"
#include "trapexp/grid.hpp"
#include "trapexp/trajectory.hpp"

namespace trapexp {

struct DesignedProtocol;

/// alpha_{n,n'} = integral of exp(-y^2) H_n H_n' y^4 over the real line, by a
/// Gauss-Hermite rule that is exact for the polynomial integrand. Zero unless
/// n - n' is in {0, +-2, +-4}.
double hermite_alpha(int n, int nprime);

/// alpha_{n,n'} / sqrt(pi 2^{n+n'} n! n'!) = <n|y^4|n'> for normalised oscillator states.
double quartic_matrix_element(int n, int nprime);

/// lambda omega0^2 in the dimensionless frame: 3 (n^2 + n + 1/2) / (4 w^2).
double lambda_tilde(double w_tilde, int n);

/// beta_{n,n'}(tau) = integral_0^tau b^4 u exp(-i (n'-n) theta) with theta the
/// Lewis phase; boundary impulses of the control contribute b^4 J.
Complex beta_integral(const ScalingTrajectory& traj, const Control& u, int n, int nprime, double tau);

/// First-order transition amplitude i <n|y^4|n'> beta(tau_f) / (2 w^2).
/// Throws RangeError for n + n' > 60.
Complex first_order_amplitude(const ScalingTrajectory& traj, const Control& u, int n, int nprime,
                              double w_tilde, double tau_f);

struct SecondOrderFidelity {
  double value = 1.0;
  double excitation = 0.0;  // sum over n' != n of |f^(1)_{n,n'}|^2
  bool breakdown = false;   // excitation > 1, value clamped to 0
};

/// sqrt(1 - sum |f^(1)_{n,n'}|^2) over n' in {n +- 2, n +- 4}.
SecondOrderFidelity fidelity_second_order(const ScalingTrajectory& traj, const Control& u, int n,
                                          double w_tilde, double tau_f);

/// Approximate bound 1 - lambda tau_f - 3 lambda integral bdot^2 b^2.
double fidelity_bound(const ScalingTrajectory& traj, double w_tilde, int n, double tau_f);

/// Closed-form bound of the unconstrained protocol (n = 0).
double f_el_bound(double tau_f, double gamma, double w_tilde);

/// Time average of |<psi_n|V1|psi_n>| in units of hbar omega0, from the
/// moment integral of b^4 u (impulses included).
double avg_perturbation_energy(const ScalingTrajectory& traj, const Control& u, double w_tilde,
                               int n, double tau_f);

struct FidelityReport {
  double F_b = 1.0;
  std::optional<double> F_EL;
  double F_second_order = 1.0;
  bool breakdown = false;
  double V1_avg = 0.0;
  double lambda_tilde = 0.0;
  int n = 0;
};

/// All perturbative quantities for a designed protocol; F_EL only for the
/// unconstrained family.
FidelityReport perturbative_report(const DesignedProtocol& design, double w_tilde, int n = 0);

}  // namespace trapexp
