// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run one
//   acceptance --verbose       also print the tables behind each verdict

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "trapexp/ermakov.hpp"
#include "trapexp/perturbation.hpp"
#include "trapexp/protocol.hpp"
#include "trapexp/simulator.hpp"
#include "trapexp/units.hpp"

using namespace trapexp;

namespace {

bool verbose = false;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void note(const std::string& line) {
  if (verbose) std::printf("    %s\n", line.c_str());
}

TrapSpec reference_trap(double waist_in_wavelengths = 20.0) {
  TrapSpec t;
  t.omega0 = 2.0 * std::numbers::pi * 2500.0;
  t.omega_f = 2.0 * std::numbers::pi * 25.0;
  t.waist = waist_in_wavelengths * 1060e-9;
  t.mass = kDefaultMass;
  return t;
}

SimulationOutcome simulate(const DesignedProtocol& d, PotentialModel model, double w) {
  SimConfig cfg;
  cfg.model = model;
  cfg.grid = default_grid(d.protocol.gamma, w, model);
  return simulate_fidelity(d, cfg, w, 0, true);
}

// ---------------------------------------------------------------- criteria

Verdict minimal_time() {
  const double tau_min = bangbang_times(10.0, 1.0).total();
  return {std::abs(tau_min - 3.08798) <= 1e-4, fmt("tau_min = %.7f, expected 3.08798 +- 1e-4", tau_min)};
}

Verdict unconstrained_identity() {
  double worst = 0.0;
  int count = 0;
  for (double tau_f : {1.0, 3.0, 7.854, 20.0, 100.0}) {
    for (double gamma : {2.0, 10.0}) {
      for (double w : {50.0, 400.0}) {
        const auto d = unconstrained_protocol(tau_f, gamma);
        const double fb = fidelity_bound(d.trajectory, w, 0, tau_f);
        const double closed = f_el_bound(tau_f, gamma, w);
        worst = std::max(worst, std::abs(fb - closed));
        ++count;
        note(fmt("tau_f %7.3f gamma %4.1f w %5.0f  F_b %.15f  closed %.15f", tau_f, gamma, w, fb, closed));
      }
    }
  }
  return {count == 20 && worst <= 1e-12, fmt("max |F_b - F_EL| = %.2e over %d points (tol 1e-12)", worst, count)};
}

Verdict harmonic_transitionless() {
  const auto d = polynomial_protocol(7.854, 10.0);
  const auto out = simulate(d, PotentialModel::Harmonic, 0.0);
  return {out.convergence.converged && out.fidelity >= 0.9999,
          fmt("F = %.12f (>= 0.9999), dt = %g, converged %s (d_dt %.1e, d_grid %.1e)", out.fidelity, out.config.dt,
              out.convergence.converged ? "yes" : "no", out.convergence.delta_dt, out.convergence.delta_grid)};
}

Verdict fidelity_ordering() {
  const auto trap = reference_trap();
  const auto p = to_dimensionless(trap);
  const auto bsb = bsb_protocol(5.0, p.gamma, 1.0);
  const auto bb = bangbang_protocol(p.gamma, 1.0);
  const auto f_bsb = simulate(bsb, PotentialModel::Quartic, p.w_tilde);
  const auto f_bb = simulate(bb, PotentialModel::Quartic, p.w_tilde);
  const double fb_bsb = perturbative_report(bsb, p.w_tilde).F_b;
  const double fb_bb = perturbative_report(bb, p.w_tilde).F_b;
  const bool ordered = f_bsb.fidelity > f_bb.fidelity;
  const bool above = f_bsb.fidelity >= fb_bsb - 1e-3 && f_bb.fidelity >= fb_bb - 1e-3;
  const bool converged = f_bsb.convergence.converged && f_bb.convergence.converged;
  return {ordered && above && converged,
          fmt("w = %.2f: F(bsb, 5) = %.6f > F(bang-bang, %.5f) = %.6f; F_b = %.6f, %.6f (87 u assumed)",
              p.w_tilde, f_bsb.fidelity, bb.protocol.tau_f, f_bb.fidelity, fb_bsb, fb_bb)};
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

// t_f ranges are in milliseconds; in units of 1/omega0 the short window would
// lie below the minimal bsb time.
double v1_slope(double t_min_ms, double t_max_ms, int points) {
  const auto trap = reference_trap();
  const auto p = to_dimensionless(trap);
  std::vector<double> tau, v1;
  for (int i = 0; i < points; ++i) {
    const double t = t_min_ms * std::pow(t_max_ms / t_min_ms, static_cast<double>(i) / (points - 1));
    const double tau_f = seconds_to_tau(trap, 1e-3 * t);
    const auto d = bsb_protocol(tau_f, p.gamma, 1.0);
    tau.push_back(tau_f);
    v1.push_back(avg_perturbation_energy(d.trajectory, d.protocol.control, p.w_tilde, 0, tau_f));
    note(fmt("t_f %8.3f ms  tau_f %9.3f  V1 %.6e", t, tau_f, v1.back()));
  }
  return fitted_slope(tau, v1);
}

Verdict scaling_exponent() {
  const double short_slope = v1_slope(0.3, 2.0, 12);
  const double long_slope = v1_slope(50.0, 200.0, 8);
  return {std::abs(short_slope + 2.0) <= 0.3 && std::abs(long_slope) < 0.2,
          fmt("bsb V1 slope %.3f on t_f in [0.3, 2] ms (-2 +- 0.3), %.4f on [50, 200] ms (|k| < 0.2)", short_slope,
              long_slope)};
}

Verdict residual_suite() {
  double worst_closed = 0.0;
  double worst_integrated = 0.0;
  int cases = 0;
  for (double gamma : {2.0, 5.0, 10.0, 20.0}) {
    for (double delta : {0.5, 1.0, 2.0}) {
      if (!(delta * std::pow(gamma, 4) > 1.0)) continue;
      const double tau_min = bangbang_times(gamma, delta).total();
      std::vector<DesignedProtocol> designs{bangbang_protocol(gamma, delta)};
      for (double factor : {1.5, 5.0}) {
        designs.push_back(bsb_protocol(factor * tau_min, gamma, delta));
        designs.push_back(unconstrained_protocol(factor * tau_min, gamma));
        designs.push_back(polynomial_protocol(factor * tau_min, gamma));
      }
      for (const auto& d : designs) {
        const double closed = ermakov_residual(d.trajectory, d.protocol.control);
        const auto integrated = integrate_ermakov(d.protocol.control, {1.0, 0.0}, d.protocol.tau_f);
        const double dense = ermakov_residual(integrated, d.protocol.control);
        worst_closed = std::max(worst_closed, closed);
        worst_integrated = std::max(worst_integrated, dense);
        ++cases;
        note(fmt("%-13s gamma %4.1f delta %3.1f tau_f %8.4f  closed %.2e  integrated %.2e",
                 std::string(to_string(d.protocol.family)).c_str(), gamma, delta, d.protocol.tau_f, closed, dense));
      }
    }
  }
  return {worst_closed < 1e-9 && worst_integrated < 1e-6,
          fmt("%d trajectories: max residual %.2e closed form (< 1e-9), %.2e integrated (< 1e-6)", cases, worst_closed,
              worst_integrated)};
}

Verdict c1_round_trip() {
  const double gamma = 10.0;
  const double delta = 1.0;
  const double tau_min = bangbang_times(gamma, delta).total();
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double tau_f = tau_min * std::pow(100.0, i / 51.0);
    const double c1 = solve_c1(tau_f, gamma, delta);
    const double err = std::abs(bsb_interval_times(c1, gamma, delta).total() - tau_f) / tau_f;
    worst = std::max(worst, err);
    note(fmt("tau_f %10.5f  c1 %.10e  rel err %.1e", tau_f, c1, err));
  }
  const auto near = bsb_protocol(tau_min * (1.0 + 1e-6), gamma, delta);
  const auto bb = bangbang_protocol(gamma, delta);
  const double distance = control_distance(near.protocol.control, bb.protocol.control);
  const auto times = bsb_interval_times(*near.protocol.c1, gamma, delta);
  note(fmt("tau_f = tau_min (1 + 1e-6): singular arc length %.4e, u_s at its end %.6f", times.tau2,
           near.protocol.control(times.tau1 + times.tau2 - 1e-12)));
  return {worst < 1e-9 && distance < 1e-3,
          fmt("round trip max rel err %.1e (< 1e-9); L_inf(bsb, bang-bang) at tau_min (1 + 1e-6) = %.4f (< 1e-3)", worst,
              distance)};
}

Verdict perturbation_cross_check() {
  const double gamma = 10.0;
  const auto d = bsb_protocol(5.0, gamma, 1.0);
  std::vector<double> gaps, errors;
  for (double w : {100.0, 200.0, 400.0}) {
    const auto sim = simulate(d, PotentialModel::Quartic, w);
    const double second = perturbative_report(d, w).F_second_order;
    gaps.push_back(std::abs(sim.fidelity - second));
    // Discretisation uncertainty of F_exact from the dt and grid refinements.
    errors.push_back(sim.convergence.delta_dt + sim.convergence.delta_grid);
    note(fmt("w %5.0f  F_exact %.10f  F_2nd %.10f  gap %.3e  +- %.1e", w, sim.fidelity, second, gaps.back(),
             errors.back()));
  }
  // Worst case over the numerical uncertainty of each gap.
  auto ratio = [&](int i) { return (gaps[i + 1] + errors[i + 1]) / std::max(0.0, gaps[i] - errors[i]); };
  const double r1 = ratio(0);
  const double r2 = ratio(1);
  return {r1 <= 0.25 && r2 <= 0.25,
          fmt("|F_exact - F_2nd| = %.2e, %.2e, %.2e at w = 100, 200, 400; worst-case ratios %.4f, %.4f (<= 1/4)",
              gaps[0], gaps[1], gaps[2], r1, r2)};
}

Verdict alpha_exactness() {
  double worst = 0.0;
  bool zeros = true;
  for (int n = 0; n <= 10; ++n) {
    for (int m = 0; m <= 10; ++m) {
      const double value = hermite_alpha(n, m);
      const double reference = oracle::alpha_by_moments(n, m);
      const int d = std::abs(n - m);
      if (d == 0 || d == 2 || d == 4) {
        worst = std::max(worst, std::abs(value - reference) / std::abs(reference));
      } else {
        zeros = zeros && value == 0.0 && std::abs(reference) < 1e-20;
      }
    }
  }
  return {worst <= 1e-12 && zeros,
          fmt("max relative deviation from the moment oracle %.1e (<= 1e-12); zero off {0, +-2, +-4}: %s", worst,
              zeros ? "yes" : "no")};
}

Verdict waist_monotonicity() {
  const Family families[] = {Family::BangSingularBang, Family::Unconstrained, Family::Polynomial};
  const double t_f = 0.5e-3;
  std::vector<std::vector<double>> fidelity(3), bound(3);
  bool converged = true;
  for (int i = 0; i < 10; ++i) {
    const double waist = 16.0 + (40.0 - 16.0) * i / 9.0;
    const auto trap = reference_trap(waist);
    const auto p = to_dimensionless(trap);
    const double tau_f = seconds_to_tau(trap, t_f);
    std::string row = fmt("w0 %5.2f lambda (w %6.2f):", waist, p.w_tilde);
    for (int k = 0; k < 3; ++k) {
      const auto d = design(families[k], tau_f, p.gamma, 1.0);
      const auto sim = simulate(d, PotentialModel::Quartic, p.w_tilde);
      converged = converged && sim.convergence.converged;
      fidelity[k].push_back(sim.fidelity);
      bound[k].push_back(perturbative_report(d, p.w_tilde).F_b);
      row += fmt("  %s F %.6f F_b %.6f", std::string(to_string(families[k])).c_str(), sim.fidelity, bound[k].back());
    }
    note(row);
  }
  bool monotone = true;
  double smallest_step = INFINITY;
  for (const auto& f : fidelity) {
    for (std::size_t i = 1; i < f.size(); ++i) {
      monotone = monotone && f[i] >= f[i - 1];
      smallest_step = std::min(smallest_step, f[i] - f[i - 1]);
    }
  }
  bool above = true;
  double margin = INFINITY;
  for (std::size_t i = 0; i < bound[1].size(); ++i) {
    for (int k : {0, 2}) {
      above = above && bound[1][i] > bound[k][i];
      margin = std::min(margin, bound[1][i] - bound[k][i]);
    }
  }
  return {monotone && above && converged,
          fmt("10 waists in [16, 40] lambda, t_f = 0.5 ms: F nondecreasing %s (smallest step %.2e); unconstrained F_b "
              "above bsb and polynomial %s (margin %.2e)",
              monotone ? "yes" : "no", smallest_step, above ? "yes" : "no", margin)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "minimal-time reproduction", minimal_time},
      {2, "unconstrained-bound identity", unconstrained_identity},
      {3, "harmonic transitionless property", harmonic_transitionless},
      {4, "fidelity ordering", fidelity_ordering},
      {5, "scaling exponent", scaling_exponent},
      {6, "Ermakov residual suite", residual_suite},
      {7, "c1 solver round trip", c1_round_trip},
      {8, "perturbation-vs-simulation cross-check", perturbation_cross_check},
      {9, "selection-rule and alpha-integral exactness", alpha_exactness},
      {10, "waist monotonicity", waist_monotonicity},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--verbose") == 0) {
      verbose = true;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N] [--verbose]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
