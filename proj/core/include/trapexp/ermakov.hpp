#pragma once

#include "trapexp/control.hpp"
#include "trapexp/grid.hpp"
#include "trapexp/trajectory.hpp"

namespace trapexp {

/// State of the first-order Ermakov system: x1 = b, x2 = db/dtau.
struct OctState {
  double x1 = 1.0;
  double x2 = 0.0;
};

/// Integrates x1' = x2, x2' = -u x1 + 1/x1^3 with classical RK4. Every control
/// segment gets its own uniform sub-grid (step <= `step`) so that no step
/// straddles a discontinuity of u. Returns a dense-sample trajectory with
/// bdot boundary flag taken from the endpoint values.
///
/// Throws SingularityError when x1 <= 0 or a NaN appears.
ScalingTrajectory integrate_ermakov(const Control& u, OctState x0, double tau_f, double step);

/// Default step tau_f / 2e4.
ScalingTrajectory integrate_ermakov(const Control& u, OctState x0, double tau_f);

/// u = 1/b^4 - bddot/b; throws DomainError for b <= 0.
double u_from_b(double b, double bddot);

/// max |bddot + u b - 1/b^3| over 10^4 uniform points, skipping points within one
/// grid step of any breakpoint. +infinity if an evaluation fails.
double ermakov_residual(const ScalingTrajectory& traj, const Control& u);

/// Lewis-Riesenfeld phase: integral of 1/b^2 from 0 to tau.
double lewis_phase(const ScalingTrajectory& traj, double tau);

/// Dynamical mode psi_n(x) of the harmonic invariant with scaling (b, bdot)
/// and accumulated phase. Throws GridError if the grid cannot resolve it.
WaveFunction mode_wavefunction(int n, double b, double bdot, double phase, const SpatialGrid& grid);

/// <I> with I = (x^2/b^2 + (b p - bdot x)^2) / 2, p applied spectrally.
/// Throws ContractError if |norm - 1| > 1e-6.
double invariant_expectation(const WaveFunction& psi, double b, double bdot);

}  // namespace trapexp
