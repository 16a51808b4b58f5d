#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "serialization.hpp"
#include "trapexp/csv.hpp"
#include "trapexp/ermakov.hpp"
#include "trapexp/error.hpp"
#include "trapexp/perturbation.hpp"
#include "trapexp/protocol.hpp"
#include "trapexp/simulator.hpp"

namespace trapexp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path output_dir(const CommandContext& ctx) {
  fs::path dir(ctx.config.output);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void announce_mass(const CommandContext& ctx) {
  if (ctx.config.mass_defaulted) {
    *ctx.err << "notice: trap.mass not given; using the default 87 u (rubidium-87). "
                "Absolute fidelities depend on this choice.\n";
  }
}

std::string csv_number(double v) { return std::isfinite(v) ? format_number(v) : ""; }

std::string csv_optional(const std::optional<double>& v) { return v ? csv_number(*v) : ""; }

struct Setup {
  DimensionlessParams params;
  double tau_f = 0.0;
};

Setup prepare(const CommandContext& ctx) {
  ctx.config.trap.validate();
  Setup s;
  s.params = ctx.config.dimensionless();
  s.tau_f = ctx.config.tau_f();
  return s;
}

DesignedProtocol load_protocol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpecError("protocol", "cannot open protocol file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidSpecError("protocol", std::string("protocol file is not valid JSON: ") + e.what());
  }
  return protocol_from_json(j);
}

// ---------------------------------------------------------------- bound

struct BoundRow {
  Family family;
  double tau_f = NAN;
  double w_tilde = NAN;
  std::optional<FidelityReport> report;
  bool respects_bound = true;
  std::string status = "ok";
};

const char* kBoundHeader = "family,tau_f,tau_f_seconds,w_tilde,F_b,F_EL,F_2nd,V1_avg,lambda_tilde,respects_bound,status\n";

}  // namespace

int cmd_design(const CommandContext& ctx) {
  const auto s = prepare(ctx);
  const auto d = design(ctx.config.family, s.tau_f, s.params.gamma, ctx.config.delta);
  const auto dir = output_dir(ctx);
  write_json(dir / "protocol.json", protocol_to_json(d, ctx.config.trap));
  {
    std::ostringstream os;
    write_control_csv(os, d.protocol.control);
    write_text(dir / "control.csv", os.str());
  }
  {
    std::ostringstream os;
    write_trajectory_csv(os, d.trajectory, d.protocol.control);
    write_text(dir / "trajectory.csv", os.str());
  }
  auto& out = *ctx.out;
  out << to_string(d.protocol.family) << ": tau_f = " << format_number(d.protocol.tau_f) << " ("
      << format_number(tau_to_seconds(ctx.config.trap, d.protocol.tau_f)) << " s)";
  for (double t : d.protocol.switch_times) out << ", switch " << format_number(t);
  out << "\n";
  if (!d.protocol.respects_bound()) {
    *ctx.err << "warning: max |u| = " << format_number(d.protocol.max_abs_u) << " exceeds delta = "
             << format_number(ctx.config.delta) << "\n";
  }
  return kOk;
}

int cmd_bound(const CommandContext& ctx) {
  const auto s = prepare(ctx);
  std::vector<BoundRow> rows;
  for (Family f : {Family::BangBang, Family::BangSingularBang, Family::Unconstrained, Family::Polynomial}) {
    BoundRow row;
    row.family = f;
    row.w_tilde = s.params.w_tilde;
    try {
      const auto d = design(f, s.tau_f, s.params.gamma, ctx.config.delta);
      row.tau_f = d.protocol.tau_f;
      row.report = perturbative_report(d, s.params.w_tilde, ctx.config.sim.state);
      row.respects_bound = d.protocol.respects_bound();
    } catch (const InfeasibleError& e) {
      row.status = "infeasible";
      *ctx.err << "note: " << to_string(f) << ": " << e.what() << "\n";
    }
    rows.push_back(std::move(row));
  }
  const auto dir = output_dir(ctx);
  if (ctx.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j = {{"family", std::string(to_string(r.family))},
                {"tau_f", number_or_null(r.tau_f)},
                {"tau_f_seconds", number_or_null(std::isfinite(r.tau_f) ? tau_to_seconds(ctx.config.trap, r.tau_f) : NAN)},
                {"w_tilde", r.w_tilde},
                {"respects_bound", r.respects_bound},
                {"status", r.status}};
      if (r.report) j.update(report_to_json(*r.report));
      arr.push_back(j);
    }
    write_json(dir / "report.json", arr);
  } else {
    std::ostringstream os;
    os << kBoundHeader;
    for (const auto& r : rows) {
      os << to_string(r.family) << ',' << csv_number(r.tau_f) << ','
         << (std::isfinite(r.tau_f) ? csv_number(tau_to_seconds(ctx.config.trap, r.tau_f)) : "") << ','
         << csv_number(r.w_tilde) << ',';
      if (r.report) {
        os << csv_number(r.report->F_b) << ',' << csv_optional(r.report->F_EL) << ','
           << csv_number(r.report->F_second_order) << ',' << csv_number(r.report->V1_avg) << ','
           << csv_number(r.report->lambda_tilde);
      } else {
        os << ",,,,";
      }
      os << ',' << (r.respects_bound ? "true" : "false") << ',' << r.status << '\n';
    }
    write_text(dir / "report.csv", os.str());
  }
  *ctx.out << "wrote " << (ctx.format == "json" ? "report.json" : "report.csv") << " (" << rows.size() << " families)\n";
  return kOk;
}

int cmd_simulate(const CommandContext& ctx) {
  const auto s = prepare(ctx);
  announce_mass(ctx);
  const auto d = ctx.protocol_path ? load_protocol(*ctx.protocol_path)
                                   : design(ctx.config.family, s.tau_f, s.params.gamma, ctx.config.delta);
  if (const auto issues = d.protocol.control.tiling_violations(); !issues.empty()) {
    throw ContractError("protocol does not tile [0, tau_f]: " + issues.front());
  }
  const double w = s.params.w_tilde;
  const auto sim = ctx.config.sim.resolve(d.protocol.gamma, w);
  const int n = ctx.config.sim.state;
  const auto outcome =
      simulate_fidelity(d, sim, w, n, ctx.config.sim.auto_converge, ctx.config.sim.max_halvings);
  const auto report = perturbative_report(d, w, n);

  json j;
  j["family"] = std::string(to_string(d.protocol.family));
  j["gamma"] = d.protocol.gamma;
  j["delta"] = d.protocol.delta ? json(*d.protocol.delta) : json(nullptr);
  j["tau_f"] = d.protocol.tau_f;
  j["tau_f_seconds"] = tau_to_seconds(ctx.config.trap, d.protocol.tau_f);
  j["w_tilde"] = w;
  j["mass"] = ctx.config.trap.mass;
  j["mass_defaulted"] = ctx.config.mass_defaulted;
  j["model"] = std::string(to_string(sim.model));
  j["state"] = n;
  j["F_exact"] = outcome.fidelity;
  j.update(report_to_json(report));
  j.erase("n");
  j["diagnostics"] = diagnostics_to_json(outcome.diagnostics);
  j["convergence"] = convergence_to_json(outcome.convergence);
  j["sim"] = {{"dt", outcome.config.dt},
              {"n_points", outcome.config.grid.n_points},
              {"half_width", outcome.config.grid.half_width},
              {"leak_threshold", outcome.config.leak_threshold}};
  const auto dir = output_dir(ctx);
  write_json(dir / "fidelity.json", j);

  if (ctx.snapshot_stride > 0) {
    std::ostringstream os;
    bool header = true;
    const auto psi0 = stationary_state(outcome.config.grid, 1.0, n);
    evolve(
        psi0, d.protocol.control, outcome.config, w,
        [&](double tau, const WaveFunction& psi) {
          write_snapshot_csv(os, tau, psi, 8, header);
          header = false;
        },
        ctx.snapshot_stride);
    write_text(dir / "snapshots.csv", os.str());
  }

  *ctx.out << to_string(d.protocol.family) << ": F_exact = " << format_number(outcome.fidelity)
           << ", F_b = " << format_number(report.F_b) << ", F_2nd = " << format_number(report.F_second_order)
           << (outcome.convergence.converged || !ctx.config.sim.auto_converge ? "" : " (NOT converged)") << "\n";
  return kOk;
}

// ---------------------------------------------------------------- sweep

namespace {

const char* kSweepHeader = "index,axis,value,family,tau_f,w_tilde,F_b,F_EL,F_2nd,F_exact,V1_avg,status";

struct SweepJob {
  int index = 0;
  double value = 0.0;
  Family family = Family::BangBang;
};

std::string job_key(int index, Family f) { return std::to_string(index) + "," + std::string(to_string(f)); }

std::string sweep_row(const CommandContext& ctx, const SweepSpec& sw, const SweepJob& job) {
  const auto& cfg = ctx.config;
  TrapSpec trap = cfg.trap;
  double tau_f = cfg.tau_f();
  if (sw.axis == "waist") {
    trap.waist = job.value;
  } else {
    tau_f = sw.units == TimeUnits::Seconds ? seconds_to_tau(trap, job.value) : job.value;
  }
  const auto params = to_dimensionless(trap);
  std::ostringstream os;
  os << job.index << ',' << sw.axis << ',' << format_number(job.value) << ',' << to_string(job.family) << ',';
  std::string status = "ok";
  std::string numbers = ",,,,,,";
  try {
    const auto d = design(job.family, tau_f, params.gamma, cfg.delta);
    const auto r = perturbative_report(d, params.w_tilde, cfg.sim.state);
    double f_exact = NAN;
    if (sw.simulate) {
      try {
        const auto sim = cfg.sim.resolve(params.gamma, params.w_tilde);
        f_exact = simulate_fidelity(d, sim, params.w_tilde, cfg.sim.state, cfg.sim.auto_converge,
                                    cfg.sim.max_halvings)
                      .fidelity;
      } catch (const LeakError&) {
        status = "leak";
      } catch (const UnitarityError&) {
        status = "unitarity";
      }
    }
    std::ostringstream n;
    n << csv_number(d.protocol.tau_f) << ',' << csv_number(params.w_tilde) << ',' << csv_number(r.F_b) << ','
      << csv_optional(r.F_EL) << ',' << csv_number(r.F_second_order) << ',' << csv_number(f_exact) << ','
      << csv_number(r.V1_avg);
    numbers = n.str();
  } catch (const InfeasibleError&) {
    status = "infeasible";
  } catch (const GridError&) {
    status = "grid";
  } catch (const Error&) {
    status = "error";
  }
  os << numbers << ',' << status;
  return os.str();
}

std::map<std::string, std::string> read_existing_rows(const fs::path& path, const std::vector<SweepJob>& jobs) {
  std::map<std::string, std::string> rows;
  std::ifstream in(path);
  if (!in) return rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != kSweepHeader) {
    throw InvalidSpecError("output", "existing " + path.string() + " has a different header; move it away to restart");
  }
  std::map<std::string, double> expected;
  for (const auto& j : jobs) expected[job_key(j.index, j.family)] = j.value;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string index;
    std::string axis;
    std::string value;
    std::string family;
    std::getline(ss, index, ',');
    std::getline(ss, axis, ',');
    std::getline(ss, value, ',');
    std::getline(ss, family, ',');
    const auto key = index + "," + family;
    const auto it = expected.find(key);
    if (it == expected.end() || value != format_number(it->second)) {
      throw InvalidSpecError("output", "existing " + path.string() + " belongs to a different sweep; move it away to restart");
    }
    rows[key] = line;
  }
  return rows;
}

}  // namespace

int cmd_sweep(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  if (!cfg.sweep) throw InvalidSpecError("sweep", "the sweep command needs a 'sweep' section in the config");
  cfg.trap.validate();
  const auto& sw = *cfg.sweep;
  if (sw.simulate) announce_mass(ctx);
  const auto values = sw.values();

  std::vector<SweepJob> jobs;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    for (Family f : sw.families) jobs.push_back({i, values[i], f});
  }

  const auto dir = output_dir(ctx);
  const auto csv_path = dir / "sweep.csv";
  auto done = read_existing_rows(csv_path, jobs);
  std::vector<SweepJob> todo;
  for (const auto& j : jobs) {
    if (!done.count(job_key(j.index, j.family))) todo.push_back(j);
  }
  *ctx.out << "sweep: " << jobs.size() << " points, " << (jobs.size() - todo.size()) << " already done\n";

  // Completed rows are appended as they finish so an interrupted sweep can resume;
  // the file is rewritten in job order at the end.
  std::mutex io;
  std::ofstream append(csv_path, std::ios::app | std::ios::binary);
  if (done.empty()) append << kSweepHeader << '\n' << std::flush;
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<std::size_t>(cfg.threads > 0 ? cfg.threads : hw, std::max<std::size_t>(1, todo.size()));
  auto worker = [&] {
    for (std::size_t k = next++; k < todo.size(); k = next++) {
      const auto row = sweep_row(ctx, sw, todo[k]);
      std::lock_guard lock(io);
      append << row << '\n' << std::flush;
      done[job_key(todo[k].index, todo[k].family)] = row;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  append.close();

  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const auto& j : jobs) os << done.at(job_key(j.index, j.family)) << '\n';
  write_text(csv_path, os.str());

  if (ctx.format == "json") {
    json arr = json::array();
    std::vector<std::string> names;
    {
      std::stringstream hs(kSweepHeader);
      std::string name;
      while (std::getline(hs, name, ',')) names.push_back(name);
    }
    for (const auto& j : jobs) {
      std::stringstream ls(done.at(job_key(j.index, j.family)));
      json row;
      std::string cell;
      for (const auto& name : names) {
        std::getline(ls, cell, ',');
        if (name == "axis" || name == "family" || name == "status") {
          row[name] = cell;
        } else if (name == "index") {
          row[name] = std::stoi(cell);
        } else {
          row[name] = cell.empty() ? json(nullptr) : json(std::stod(cell));
        }
      }
      arr.push_back(row);
    }
    write_json(dir / "sweep.json", arr);
  }
  *ctx.out << "wrote sweep.csv\n";
  return kOk;
}

// ---------------------------------------------------------------- validate

namespace {

struct Check {
  std::string name;
  bool passed = false;
  double value = NAN;
  double threshold = NAN;
  std::string detail;
};

json check_to_json(const Check& c) {
  return {{"name", c.name},
          {"passed", c.passed},
          {"value", number_or_null(c.value)},
          {"threshold", number_or_null(c.threshold)},
          {"detail", c.detail}};
}

Check at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), std::isfinite(value) && value <= threshold, value, threshold, std::move(detail)};
}

Check at_least(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), std::isfinite(value) && value >= threshold, value, threshold, std::move(detail)};
}

// Largest relative drift of the bang-segment first integral bdot^2 + u b^2 + 1/b^2.
double bang_integral_drift(const DesignedProtocol& d) {
  double worst = 0.0;
  const auto& segs = d.protocol.control.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (segs[k].kind != SegmentKind::BangLow && segs[k].kind != SegmentKind::BangHigh) continue;
    if (!(segs[k].end > segs[k].start)) continue;
    const double u = segs[k].u(segs[k].start);
    auto energy = [&](double t) {
      const auto s = d.trajectory.on_segment(k, t);
      return s.bdot * s.bdot + u * s.b * s.b + 1.0 / (s.b * s.b);
    };
    const double e0 = energy(segs[k].start);
    for (int i = 1; i <= 100; ++i) {
      const double t = segs[k].start + (segs[k].end - segs[k].start) * i / 100.0;
      worst = std::max(worst, std::abs(energy(t) - e0) / std::max(1.0, std::abs(e0)));
    }
  }
  return worst;
}

// Largest deviation of b bdot from c1 along singular/analytic b^2-linear arcs.
double singular_integral_drift(const DesignedProtocol& d) {
  if (!d.protocol.c1) return 0.0;
  double worst = 0.0;
  const auto& segs = d.protocol.control.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (!std::holds_alternative<SingularArcControl>(segs[k].law)) continue;
    for (int i = 0; i <= 100; ++i) {
      const double t = segs[k].start + (segs[k].end - segs[k].start) * i / 100.0;
      const auto s = d.trajectory.on_segment(k, t);
      worst = std::max(worst, std::abs(s.b * s.bdot - *d.protocol.c1));
    }
  }
  return worst;
}

std::vector<Check> validate_protocol_file(const DesignedProtocol& d) {
  std::vector<Check> checks;
  const auto issues = d.protocol.control.tiling_violations();
  Check tiling{"tiling", issues.empty(), static_cast<double>(issues.size()), 0.0, ""};
  for (const auto& i : issues) tiling.detail += (tiling.detail.empty() ? "" : "; ") + i;
  checks.push_back(tiling);
  if (!issues.empty()) return checks;
  const double tau_f = d.protocol.control.tau_f();
  checks.push_back(at_most("duration_matches", std::abs(tau_f - d.protocol.tau_f), 1e-12 * std::max(1.0, tau_f)));
  if (d.protocol.delta) {
    double sup = 0.0;
    for (const auto& seg : d.protocol.control.segments()) {
      for (int i = 1; i < 1000; ++i) sup = std::max(sup, std::abs(seg.u(seg.start + (seg.end - seg.start) * i / 1000.0)));
    }
    checks.push_back(at_most("bound", sup, *d.protocol.delta * (1.0 + 1e-12), "sup |u| on segment interiors"));
  }
  const auto end = d.trajectory.at_end();
  const double bdot_end = end.bdot - d.protocol.control.end_impulse() * end.b;
  checks.push_back(at_most("final_width", std::abs(end.b - d.protocol.gamma), 1e-6 * d.protocol.gamma,
                           "integrated b(tau_f) vs gamma"));
  checks.push_back(at_most("final_rest", std::abs(bdot_end), 1e-6, "integrated bdot(tau_f) after the end kick"));
  return checks;
}

std::vector<Check> validate_defaults(const CommandContext& ctx, double gamma, double w, double tau_f) {
  std::vector<Check> checks;
  const double delta = ctx.config.delta;
  std::vector<DesignedProtocol> designs;
  for (Family f : {Family::BangBang, Family::BangSingularBang, Family::Unconstrained, Family::Polynomial}) {
    const std::string name(to_string(f));
    try {
      designs.push_back(design(f, tau_f, gamma, delta));
    } catch (const InfeasibleError& e) {
      checks.push_back({"design_" + name, false, e.value(), NAN, e.what()});
      continue;
    }
    const auto& d = designs.back();
    if (!(d.protocol.tau_f > 0.0)) continue;
    checks.push_back(at_most("ermakov_residual_closed_form_" + name, ermakov_residual(d.trajectory, d.protocol.control), 1e-9));
    const auto dense = integrate_ermakov(d.protocol.control, {1.0, 0.0}, d.protocol.tau_f, 1e-4);
    checks.push_back(at_most("ermakov_residual_integrated_" + name, ermakov_residual(dense, d.protocol.control), 1e-6));
    checks.push_back(at_most("final_width_" + name, std::abs(dense.at_end().b - gamma), 1e-6 * gamma));
    checks.push_back(at_most("first_integral_bang_" + name, bang_integral_drift(d), 1e-10));
    checks.push_back(at_most("first_integral_singular_" + name, singular_integral_drift(d), 1e-10));
    const double fb = fidelity_bound(d.trajectory, w, 0, d.protocol.tau_f);
    const double v1 = avg_perturbation_energy(d.trajectory, d.protocol.control, w, 0, d.protocol.tau_f);
    checks.push_back(at_most("bound_identity_" + name, std::abs(fb - (1.0 - v1 * d.protocol.tau_f)), 1e-10,
                             "|F_b - (1 - V1 tau_f)|"));
    if (f == Family::Unconstrained) {
      checks.push_back(at_most("f_el_closed_form", std::abs(fb - f_el_bound(tau_f, gamma, w)), 1e-12));
    }
    {
      double worst = 0.0;
      for (int shift : {1, 3, 5, 6}) {
        worst = std::max(worst, std::abs(first_order_amplitude(d.trajectory, d.protocol.control, 0, shift, w,
                                                               d.protocol.tau_f)));
      }
      checks.push_back(at_most("selection_rule_" + name, worst, 1e-15, "max |f(0 -> n')| for n' in {1, 3, 5, 6}"));
    }
  }

  if (delta * std::pow(gamma, 4) > 1.0 && gamma > 1.0) {
    const double lo = std::log(c1_floor(gamma));
    const double hi = std::log(c1_upper(gamma, delta));
    double previous = INFINITY;
    bool monotone = true;
    for (int i = 0; i <= 200; ++i) {
      const double total = bsb_interval_times(std::exp(lo + (hi - lo) * i / 200.0), gamma, delta).total();
      if (!(total < previous)) monotone = false;
      previous = total;
    }
    checks.push_back({"c1_bracket_monotone", monotone, NAN, NAN, "tau_f(c1) strictly decreasing on 201 log-spaced points"});
  }

  for (const auto& d : designs) {
    if (!(d.protocol.tau_f > 0.0)) continue;
    SimConfig sim;
    sim.model = PotentialModel::Harmonic;
    sim.grid = default_grid(gamma, w, PotentialModel::Harmonic);
    sim.dt = ctx.config.sim.dt;
    const double fidelity = simulate_fidelity(d, sim, w, 0, false).fidelity;
    checks.push_back(at_least("harmonic_transitionless_" + std::string(to_string(d.protocol.family)), fidelity, 0.9999));
  }
  return checks;
}

}  // namespace

int cmd_validate(const CommandContext& ctx) {
  std::vector<Check> checks;
  json doc;
  int code = kOk;
  if (ctx.protocol_path) {
    const auto d = load_protocol(*ctx.protocol_path);
    doc["protocol"] = *ctx.protocol_path;
    checks = validate_protocol_file(d);
  } else {
    const auto s = prepare(ctx);
    doc["gamma"] = s.params.gamma;
    doc["delta"] = ctx.config.delta;
    doc["tau_f"] = s.tau_f;
    doc["w_tilde"] = s.params.w_tilde;
    try {
      ControlBound{ctx.config.delta}.validate(s.params.gamma);
      checks.push_back({"bound_feasible", true, ctx.config.delta * std::pow(s.params.gamma, 4), 1.0, "delta gamma^4 > 1"});
      auto more = validate_defaults(ctx, s.params.gamma, s.params.w_tilde, s.tau_f);
      checks.insert(checks.end(), more.begin(), more.end());
    } catch (const InfeasibleError& e) {
      checks.push_back({"bound_feasible", false, e.value(), 1.0, e.what()});
      code = kInfeasible;
    }
  }
  bool passed = true;
  json arr = json::array();
  for (const auto& c : checks) {
    passed = passed && c.passed;
    arr.push_back(check_to_json(c));
    if (!c.passed) *ctx.out << "FAIL " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  }
  doc["passed"] = passed;
  doc["checks"] = arr;
  write_json(output_dir(ctx) / "validation.json", doc);
  *ctx.out << (passed ? "all " : "") << checks.size() << " checks" << (passed ? " passed" : ", some failed") << "\n";
  if (!passed && code == kOk) code = kFailure;
  return code;
}

// ---------------------------------------------------------------- errors and log

namespace {

void append_log(const CommandContext& ctx, const std::string& name, int code) {
  try {
    fs::create_directories(ctx.config.output);
    std::ofstream log(fs::path(ctx.config.output) / "run.log", std::ios::app);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    log << stamp << ' ' << name << " exit=" << code << '\n';
  } catch (...) {
  }
}

int report_error(const CommandContext& ctx, int code, json j) {
  *ctx.err << j.dump() << '\n';
  return code;
}

}  // namespace

int run_command(const std::string& name, int (*command)(const CommandContext&), const CommandContext& ctx) {
  int code = kOk;
  try {
    code = command(ctx);
  } catch (const InfeasibleDurationError& e) {
    code = report_error(ctx, kInfeasible, {{"error", "infeasible-duration"}, {"message", e.what()}, {"tau_min", e.tau_min()}});
  } catch (const InfeasibleError& e) {
    code = report_error(ctx, kInfeasible, {{"error", "infeasible"}, {"message", e.what()}, {"value", number_or_null(e.value())}});
  } catch (const LeakError& e) {
    code = report_error(ctx, kSimulationFault, {{"error", "leak"}, {"message", e.what()}, {"tau", e.tau()}});
  } catch (const UnitarityError& e) {
    code = report_error(ctx, kSimulationFault, {{"error", "unitarity"}, {"message", e.what()}});
  } catch (const GridError& e) {
    code = report_error(ctx, kFailure, {{"error", "grid"}, {"message", e.what()}});
  } catch (const InvalidSpecError& e) {
    code = report_error(ctx, kFailure, {{"error", "invalid-spec"}, {"field", e.field()}, {"message", e.what()}});
  } catch (const std::exception& e) {
    code = report_error(ctx, kFailure, {{"error", "failure"}, {"message", e.what()}});
  }
  append_log(ctx, name, code);
  return code;
}

}  // namespace trapexp::cli
