#include "trapexp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "trapexp/ermakov.hpp"
#include "trapexp/error.hpp"
#include "trapexp/fft.hpp"
#include "trapexp/protocol.hpp"

namespace trapexp {

std::string_view to_string(PotentialModel model) {
  switch (model) {
    case PotentialModel::Harmonic: return "harmonic";
    case PotentialModel::Quartic: return "quartic";
    case PotentialModel::Gaussian: return "gaussian";
  }
  return "quartic";
}

PotentialModel potential_model_from_string(std::string_view name) {
  if (name == "harmonic") return PotentialModel::Harmonic;
  if (name == "quartic") return PotentialModel::Quartic;
  if (name == "gaussian") return PotentialModel::Gaussian;
  throw ContractError("unknown potential model '" + std::string(name) + "'");
}

std::vector<double> potential_shape(const SpatialGrid& grid, double w_tilde, PotentialModel model) {
  if (model != PotentialModel::Harmonic && !(w_tilde > 0.0)) {
    throw DomainError("anharmonic potentials need w_tilde > 0");
  }
  std::vector<double> shape(grid.n_points);
  const double w2 = w_tilde * w_tilde;
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double x2 = grid.x(j) * grid.x(j);
    switch (model) {
      case PotentialModel::Harmonic: shape[j] = 0.5 * x2; break;
      case PotentialModel::Quartic: shape[j] = 0.5 * (x2 - x2 * x2 / w2); break;
      case PotentialModel::Gaussian: shape[j] = 0.25 * w2 * -std::expm1(-2.0 * x2 / w2); break;
    }
  }
  return shape;
}

std::vector<double> potential_values(const SpatialGrid& grid, double u, double w_tilde,
                                     PotentialModel model) {
  auto v = potential_shape(grid, w_tilde, model);
  for (auto& e : v) e *= u;
  return v;
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ContractError("simulation dt must be positive");
  if (!(leak_threshold > 0.0 && leak_threshold <= 1e-3)) {
    throw ContractError("leak_threshold must lie in (0, 1e-3]");
  }
  grid.validate();
}

SpatialGrid default_grid(double gamma, double w_tilde, PotentialModel model) {
  SpatialGrid grid;
  grid.n_points = 4096;
  grid.half_width = 8.0 * std::max(1.0, gamma);
  if (model != PotentialModel::Harmonic) grid.half_width = std::min(grid.half_width, 0.69 * w_tilde);
  return grid;
}

WaveFunction stationary_state(const SpatialGrid& grid, double omega_ratio, int n) {
  if (!(omega_ratio > 0.0)) throw DomainError("stationary_state needs a positive frequency ratio");
  return mode_wavefunction(n, 1.0 / std::sqrt(omega_ratio), 0.0, 0.0, grid);
}

namespace {

double edge_probability(const WaveFunction& psi) {
  const std::size_t n = psi.amplitudes.size();
  const std::size_t band = n / 40;  // 2.5% per side
  double p = 0.0;
  for (std::size_t j = 0; j < band; ++j) {
    p += std::norm(psi.amplitudes[j]) + std::norm(psi.amplitudes[n - 1 - j]);
  }
  return p * psi.grid.dx();
}

// exp(-i c S(x)), cached on the last coefficient.
class PotentialPhase {
 public:
  explicit PotentialPhase(std::vector<double> shape) : shape_(std::move(shape)), factor_(shape_.size()) {}

  const std::vector<Complex>& get(double coefficient) {
    if (!valid_ || coefficient != last_) {
      for (std::size_t j = 0; j < shape_.size(); ++j) factor_[j] = std::polar(1.0, -coefficient * shape_[j]);
      last_ = coefficient;
      valid_ = true;
    }
    return factor_;
  }

 private:
  std::vector<double> shape_;
  std::vector<Complex> factor_;
  double last_ = 0.0;
  bool valid_ = false;
};

class KineticPhase {
 public:
  explicit KineticPhase(std::vector<double> k) : k_(std::move(k)), factor_(k_.size()) {}

  const std::vector<Complex>& get(double dt) {
    if (!valid_ || dt != last_) {
      for (std::size_t j = 0; j < k_.size(); ++j) factor_[j] = std::polar(1.0, -0.5 * k_[j] * k_[j] * dt);
      last_ = dt;
      valid_ = true;
    }
    return factor_;
  }

 private:
  std::vector<double> k_;
  std::vector<Complex> factor_;
  double last_ = 0.0;
  bool valid_ = false;
};

struct Step {
  double dt;
  double u;
  double end;
};

std::vector<Step> make_steps(const Control& control, double dt) {
  std::vector<Step> steps;
  for (const auto& seg : control.segments()) {
    const double len = seg.end - seg.start;
    if (!(len > 0.0)) continue;
    const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(len / dt - 1e-9)));
    const double h = len / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double mid = seg.start + (static_cast<double>(i) + 0.5) * h;
      steps.push_back({h, seg.u(mid), i + 1 == count ? seg.end : seg.start + (i + 1) * h});
    }
  }
  return steps;
}

void multiply(std::vector<Complex>& psi, const std::vector<Complex>& factor) {
  for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= factor[j];
}

}  // namespace

EvolveResult evolve(const WaveFunction& psi0, const Control& control, const SimConfig& cfg,
                    double w_tilde, const SnapshotObserver& observer, std::size_t stride) {
  cfg.validate();
  if (!(psi0.grid == cfg.grid)) throw ContractError("initial state lives on a different grid");
  const auto violations = control.tiling_violations();
  if (!violations.empty()) throw ContractError("control does not tile [0, tau_f]: " + violations.front());

  const auto steps = make_steps(control, cfg.dt);
  PotentialPhase potential(potential_shape(cfg.grid, w_tilde, cfg.model));
  KineticPhase kinetic(cfg.grid.wavenumbers());
  FourierTransform fft(cfg.grid.n_points);

  EvolveResult result{psi0, {}};
  auto& psi = result.psi.amplitudes;
  auto& diag = result.diagnostics;
  const double norm0 = psi0.norm();

  auto check_leak = [&](double tau) {
    const double edge = edge_probability(result.psi);
    diag.max_edge_probability = std::max(diag.max_edge_probability, edge);
    if (edge > cfg.leak_threshold) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "probability %.3g reached the grid edge at tau = %.6g", edge, tau);
      throw LeakError(buf, tau);
    }
  };
  auto snapshot = [&](double tau, double pending) {
    if (!observer) return;
    WaveFunction copy = result.psi;
    multiply(copy.amplitudes, potential.get(pending));
    observer(tau, copy);
  };

  // Consecutive half-steps of the potential commute and are merged.
  double pending = control.start_impulse();
  if (observer) snapshot(0.0, pending);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    diag.max_abs_u = std::max(diag.max_abs_u, std::abs(s.u));
    pending += 0.5 * s.u * s.dt;
    multiply(psi, potential.get(pending));
    fft.forward(psi);
    multiply(psi, kinetic.get(s.dt));
    fft.inverse(psi);
    pending = 0.5 * s.u * s.dt;
    if (i + 1 == steps.size()) pending += control.end_impulse();
    ++diag.steps;
    if (diag.steps % 64 == 0) check_leak(s.end);
    if (observer && stride > 0 && diag.steps % stride == 0 && i + 1 < steps.size()) snapshot(s.end, pending);
  }
  multiply(psi, potential.get(pending));
  const double tau_end = steps.empty() ? 0.0 : steps.back().end;
  check_leak(tau_end);
  if (observer) observer(tau_end, result.psi);

  diag.norm_drift = std::abs(result.psi.norm() - norm0);
  if (diag.norm_drift > 1e-8) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "norm drifted by %.3g", diag.norm_drift);
    throw UnitarityError(buf);
  }
  return result;
}

double overlap_fidelity(const WaveFunction& psi, const WaveFunction& target) {
  return std::abs(inner_product(target, psi));
}

namespace {

double run_fidelity(const EigenstateSpec& initial, const EigenstateSpec& target, const Control& control,
                    const SimConfig& cfg, double w_tilde, EvolveDiagnostics* diag = nullptr) {
  const auto psi0 = stationary_state(cfg.grid, initial.omega_ratio, initial.n);
  const auto goal = stationary_state(cfg.grid, target.omega_ratio, target.n);
  auto out = evolve(psi0, control, cfg, w_tilde);
  if (diag) *diag = out.diagnostics;
  return overlap_fidelity(out.psi, goal);
}

}  // namespace

namespace {

ConvergenceReport convergence_impl(const EigenstateSpec& initial, const EigenstateSpec& target,
                                   const Control& control, const SimConfig& cfg, double w_tilde,
                                   EvolveDiagnostics* diag) {
  ConvergenceReport r;
  r.dt = cfg.dt;
  r.fidelity = run_fidelity(initial, target, control, cfg, w_tilde, diag);
  SimConfig half = cfg;
  half.dt = 0.5 * cfg.dt;
  r.fidelity_half_dt = run_fidelity(initial, target, control, half, w_tilde);
  SimConfig fine = cfg;
  fine.grid.n_points = 2 * cfg.grid.n_points;
  r.fidelity_double_grid = run_fidelity(initial, target, control, fine, w_tilde);
  r.delta_dt = std::abs(r.fidelity_half_dt - r.fidelity);
  r.delta_grid = std::abs(r.fidelity_double_grid - r.fidelity);
  r.converged = r.delta_dt <= kConvergenceTolerance && r.delta_grid <= kConvergenceTolerance;
  return r;
}

}  // namespace

ConvergenceReport convergence_check(const EigenstateSpec& initial, const EigenstateSpec& target,
                                    const Control& control, const SimConfig& cfg, double w_tilde) {
  return convergence_impl(initial, target, control, cfg, w_tilde, nullptr);
}

SimulationOutcome simulate_fidelity(const DesignedProtocol& design, SimConfig cfg, double w_tilde, int n,
                                    bool auto_converge, int max_halvings) {
  const auto& p = design.protocol;
  const EigenstateSpec initial{n, 1.0};
  const EigenstateSpec target{n, 1.0 / (p.gamma * p.gamma)};
  SimulationOutcome out;
  if (!auto_converge) {
    out.fidelity = run_fidelity(initial, target, p.control, cfg, w_tilde, &out.diagnostics);
    out.config = cfg;
    out.convergence.dt = cfg.dt;
    out.convergence.fidelity = out.fidelity;
    return out;
  }
  for (int k = 0;; ++k) {
    out.convergence = convergence_impl(initial, target, p.control, cfg, w_tilde, &out.diagnostics);
    if (out.convergence.converged || k >= max_halvings) break;
    cfg.dt *= 0.5;
  }
  out.config = cfg;
  out.fidelity = out.convergence.fidelity;
  return out;
}

}  // namespace trapexp
