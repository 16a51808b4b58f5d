#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "trapexp/control.hpp"
#include "trapexp/grid.hpp"

namespace trapexp {

struct DesignedProtocol;

enum class PotentialModel { Harmonic, Quartic, Gaussian };

std::string_view to_string(PotentialModel model);
PotentialModel potential_model_from_string(std::string_view name);

/// Spatial profile S(x) with V(x, tau) = u(tau) S(x):
/// harmonic x^2/2, quartic (x^2 - x^4/w^2)/2, gaussian (w^2/4)(1 - exp(-2x^2/w^2)).
std::vector<double> potential_shape(const SpatialGrid& grid, double w_tilde, PotentialModel model);

std::vector<double> potential_values(const SpatialGrid& grid, double u, double w_tilde, PotentialModel model);

struct SimConfig {
  PotentialModel model = PotentialModel::Quartic;
  double dt = 5e-4;
  SpatialGrid grid;
  double leak_threshold = 1e-4;

  void validate() const;
};

/// half_width = min(8 gamma, 0.69 w) (8 gamma alone for the harmonic model), 4096 points.
SpatialGrid default_grid(double gamma, double w_tilde, PotentialModel model);

/// Harmonic eigenstate n of a trap with omega / omega0 = omega_ratio.
WaveFunction stationary_state(const SpatialGrid& grid, double omega_ratio, int n);

struct EvolveDiagnostics {
  double norm_drift = 0.0;
  double max_edge_probability = 0.0;  // probability in the outer 5% of the box
  double max_abs_u = 0.0;
  std::size_t steps = 0;
};

struct EvolveResult {
  WaveFunction psi;
  EvolveDiagnostics diagnostics;
};

using SnapshotObserver = std::function<void(double tau, const WaveFunction& psi)>;

/// Strang-split evolution over [0, control.tau_f()]: half potential, kinetic
/// step in Fourier space, half potential. u is sampled at step midpoints and
/// every control segment gets its own uniform step <= cfg.dt. Boundary
/// impulses of the control are applied as instantaneous potential kicks.
///
/// Throws LeakError when the edge probability exceeds cfg.leak_threshold and
/// UnitarityError when the norm drifts by more than 1e-8. The observer, if
/// set, sees the state every `stride` steps and at the end.
EvolveResult evolve(const WaveFunction& psi0, const Control& control, const SimConfig& cfg,
                    double w_tilde, const SnapshotObserver& observer = {}, std::size_t stride = 0);

/// |<target|psi>|; throws ContractError on grid mismatch.
double overlap_fidelity(const WaveFunction& psi, const WaveFunction& target);

struct EigenstateSpec {
  int n = 0;
  double omega_ratio = 1.0;
};

struct ConvergenceReport {
  double fidelity = 0.0;
  double fidelity_half_dt = 0.0;
  double fidelity_double_grid = 0.0;
  double delta_dt = 0.0;
  double delta_grid = 0.0;
  double dt = 0.0;
  bool converged = false;
};

inline constexpr double kConvergenceTolerance = 1e-6;

/// Re-runs with dt/2 and with twice the points on the same box.
ConvergenceReport convergence_check(const EigenstateSpec& initial, const EigenstateSpec& target,
                                    const Control& control, const SimConfig& cfg, double w_tilde);

struct SimulationOutcome {
  double fidelity = 0.0;
  EvolveDiagnostics diagnostics;
  ConvergenceReport convergence;
  SimConfig config;
};

/// Fidelity of the designed protocol against the final-trap eigenstate n,
/// starting from initial-trap eigenstate n. With auto_converge the step is
/// halved (at most `max_halvings` times) until convergence_check passes.
SimulationOutcome simulate_fidelity(const DesignedProtocol& design, SimConfig cfg, double w_tilde,
                                    int n = 0, bool auto_converge = true, int max_halvings = 4);

}  // namespace trapexp
