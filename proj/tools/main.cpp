#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "trapexp/error.hpp"

using namespace trapexp;
using namespace trapexp::cli;

namespace {

struct Overrides {
  std::optional<std::string> family;
  std::optional<double> tau_f;
  std::optional<std::string> units;
  std::optional<double> delta;
  std::optional<double> omega0;
  std::optional<double> omega_f;
  std::optional<double> waist;
  std::optional<double> mass_u;
  std::optional<std::string> model;
  std::optional<double> dt;
  std::optional<std::size_t> points;
  std::optional<double> half_width;
  std::optional<int> state;
  bool no_converge = false;
  std::optional<int> threads;
};

void apply(const Overrides& o, RunConfig& c) {
  if (o.family) c.family = family_from_string(*o.family);
  if (o.tau_f) {
    if (!o.units) throw InvalidSpecError("units", "--tau-f needs --units seconds|dimensionless");
    c.tau_f_value = *o.tau_f;
    c.tau_f_units = time_units_from_string(*o.units);
  } else if (o.units) {
    throw InvalidSpecError("units", "--units given without --tau-f");
  }
  if (o.delta) c.delta = *o.delta;
  if (o.omega0) c.trap.omega0 = *o.omega0;
  if (o.omega_f) c.trap.omega_f = *o.omega_f;
  if (o.waist) c.trap.waist = *o.waist;
  if (o.mass_u) {
    c.trap.mass = *o.mass_u * kAtomicMassUnit;
    c.mass_defaulted = false;
  }
  if (o.model) c.sim.model = potential_model_from_string(*o.model);
  if (o.dt) c.sim.dt = *o.dt;
  if (o.points) c.sim.n_points = *o.points;
  if (o.half_width) c.sim.half_width = *o.half_width;
  if (o.state) c.sim.state = *o.state;
  if (o.no_converge) c.sim.auto_converge = false;
  if (o.threads) c.threads = *o.threads;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal expansion of an anharmonic trap: design, bound, simulate, sweep, validate"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::string format = "csv";
  Overrides o;
  std::optional<std::string> protocol_path;
  std::size_t snapshots = 0;
  bool print_config = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--format", format, "tabular output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--family", o.family, "bang-bang | bsb | unconstrained | polynomial");
    cmd->add_option("--tau-f", o.tau_f, "protocol duration (needs --units)");
    cmd->add_option("--units", o.units, "seconds | dimensionless");
    cmd->add_option("--delta", o.delta, "control bound |u| <= delta");
    cmd->add_option("--omega0", o.omega0, "initial angular frequency [rad/s]");
    cmd->add_option("--omega-f", o.omega_f, "final angular frequency [rad/s]");
    cmd->add_option("--waist", o.waist, "beam waist [m]");
    cmd->add_option("--mass-u", o.mass_u, "atomic mass [u]");
    cmd->add_option("--model", o.model, "harmonic | quartic | gaussian");
    cmd->add_option("--dt", o.dt, "split-operator time step (dimensionless)");
    cmd->add_option("--points", o.points, "grid points");
    cmd->add_option("--half-width", o.half_width, "grid half width (dimensionless)");
    cmd->add_option("--state", o.state, "initial eigenstate index");
    cmd->add_flag("--no-converge", o.no_converge, "skip the dt/grid refinement loop");
    cmd->add_option("--threads", o.threads, "sweep workers (default: available cores)");
    cmd->add_flag("--print-config", print_config, "print the effective config as JSON and exit");
  };

  auto* design = app.add_subcommand("design", "write protocol.json, control.csv and trajectory.csv");
  auto* bound = app.add_subcommand("bound", "perturbative fidelity bounds for every family");
  auto* simulate = app.add_subcommand("simulate", "split-operator simulation, writes fidelity.json");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep, writes sweep.csv");
  auto* validate = app.add_subcommand("validate", "run the invariant suite, writes validation.json");
  simulate->add_option("--protocol", protocol_path, "use an existing protocol.json")->check(CLI::ExistingFile);
  simulate->add_option("--snapshots", snapshots, "write |psi|^2 every N steps to snapshots.csv");
  validate->add_option("--protocol", protocol_path, "check an existing protocol.json")->check(CLI::ExistingFile);
  for (auto* cmd : {design, bound, simulate, sweep, validate}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kFailure;
  }

  CommandContext ctx;
  ctx.out = &std::cout;
  ctx.err = &std::cerr;
  ctx.format = format;
  ctx.protocol_path = protocol_path;
  ctx.snapshot_stride = snapshots;
  try {
    ctx.config = config_path ? load_config(*config_path) : RunConfig::defaults();
    apply(o, ctx.config);
    if (out_dir) ctx.config.output = *out_dir;
    if (print_config) {
      std::cout << config_to_json(ctx.config).dump(2) << '\n';
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "invalid-spec"}, {"message", e.what()}}.dump() << '\n';
    return kFailure;
  }

  if (design->parsed()) return run_command("design", cmd_design, ctx);
  if (bound->parsed()) return run_command("bound", cmd_bound, ctx);
  if (simulate->parsed()) return run_command("simulate", cmd_simulate, ctx);
  if (sweep->parsed()) return run_command("sweep", cmd_sweep, ctx);
  if (validate->parsed()) return run_command("validate", cmd_validate, ctx);
  return kFailure;
}
