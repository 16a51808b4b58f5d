#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "trapexp/error.hpp"

namespace trapexp::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InvalidSpecError(where, "config section '" + where + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw InvalidSpecError(where + "." + key, "unknown config key '" + where + "." + key + "'");
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw InvalidSpecError(where + "." + key, where + "." + key + " must be a number");
  return v.get<double>();
}

}  // namespace

TimeUnits time_units_from_string(const std::string& name) {
  if (name == "seconds" || name == "s") return TimeUnits::Seconds;
  if (name == "dimensionless") return TimeUnits::Dimensionless;
  throw InvalidSpecError("units", "time units must be 'seconds' or 'dimensionless', got '" + name + "'");
}

std::string to_string(TimeUnits units) { return units == TimeUnits::Seconds ? "seconds" : "dimensionless"; }

std::vector<double> SweepSpec::values() const {
  if (!(min > 0.0) || !(max >= min)) throw InvalidSpecError("sweep", "sweep range must satisfy 0 < min <= max");
  if (points < 1) throw InvalidSpecError("sweep.points", "sweep needs at least one point");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out[i] = scale == "log" ? std::exp(std::log(min) + s * (std::log(max) - std::log(min))) : min + s * (max - min);
  }
  return out;
}

SimConfig SimSettings::resolve(double gamma, double w_tilde) const {
  SimConfig cfg;
  cfg.model = model;
  cfg.dt = dt;
  cfg.grid = default_grid(gamma, w_tilde, model);
  if (n_points) cfg.grid.n_points = *n_points;
  if (half_width) cfg.grid.half_width = *half_width;
  cfg.leak_threshold = leak_threshold;
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.trap.omega0 = 2.0 * std::numbers::pi * 2500.0;
  c.trap.omega_f = 2.0 * std::numbers::pi * 25.0;
  c.trap.waist = 20.0 * 1060e-9;
  c.trap.mass = kDefaultMass;
  return c;
}

double RunConfig::tau_f() const {
  return tau_f_units == TimeUnits::Seconds ? seconds_to_tau(trap, tau_f_value) : tau_f_value;
}

RunConfig parse_config(const json& doc, RunConfig c) {
  reject_unknown(doc, {"trap", "bound", "protocol", "sim", "sweep", "output", "threads"}, "config");
  if (doc.contains("trap")) {
    const auto& t = doc["trap"];
    reject_unknown(t, {"omega0", "omega_f", "waist", "mass", "mass_u"}, "trap");
    if (t.contains("omega0")) c.trap.omega0 = number(t, "omega0", "trap");
    if (t.contains("omega_f")) c.trap.omega_f = number(t, "omega_f", "trap");
    if (t.contains("waist")) c.trap.waist = number(t, "waist", "trap");
    if (t.contains("mass") && t.contains("mass_u")) {
      throw InvalidSpecError("trap.mass", "give either trap.mass (kg) or trap.mass_u, not both");
    }
    if (t.contains("mass")) {
      c.trap.mass = number(t, "mass", "trap");
      c.mass_defaulted = false;
    }
    if (t.contains("mass_u")) {
      c.trap.mass = number(t, "mass_u", "trap") * kAtomicMassUnit;
      c.mass_defaulted = false;
    }
  }
  if (doc.contains("bound")) {
    reject_unknown(doc["bound"], {"delta"}, "bound");
    if (doc["bound"].contains("delta")) c.delta = number(doc["bound"], "delta", "bound");
  }
  if (doc.contains("protocol")) {
    const auto& p = doc["protocol"];
    reject_unknown(p, {"family", "tau_f", "units"}, "protocol");
    if (p.contains("family")) c.family = family_from_string(p["family"].get<std::string>());
    if (p.contains("tau_f")) {
      if (!p.contains("units")) {
        throw InvalidSpecError("protocol.units", "protocol.tau_f needs an explicit units field ('seconds' or 'dimensionless')");
      }
      c.tau_f_value = number(p, "tau_f", "protocol");
      c.tau_f_units = time_units_from_string(p["units"].get<std::string>());
    } else if (p.contains("units")) {
      throw InvalidSpecError("protocol.units", "protocol.units given without protocol.tau_f");
    }
  }
  if (doc.contains("sim")) {
    const auto& s = doc["sim"];
    reject_unknown(s, {"model", "dt", "n_points", "half_width", "leak_threshold", "auto_converge", "max_halvings", "state"},
                   "sim");
    if (s.contains("model")) c.sim.model = potential_model_from_string(s["model"].get<std::string>());
    if (s.contains("dt")) c.sim.dt = number(s, "dt", "sim");
    if (s.contains("n_points")) c.sim.n_points = s["n_points"].get<std::size_t>();
    if (s.contains("half_width")) c.sim.half_width = number(s, "half_width", "sim");
    if (s.contains("leak_threshold")) c.sim.leak_threshold = number(s, "leak_threshold", "sim");
    if (s.contains("auto_converge")) c.sim.auto_converge = s["auto_converge"].get<bool>();
    if (s.contains("max_halvings")) c.sim.max_halvings = s["max_halvings"].get<int>();
    if (s.contains("state")) c.sim.state = s["state"].get<int>();
  }
  if (doc.contains("sweep")) {
    const auto& s = doc["sweep"];
    reject_unknown(s, {"axis", "min", "max", "points", "scale", "units", "families", "simulate"}, "sweep");
    SweepSpec sw;
    if (s.contains("axis")) sw.axis = s["axis"].get<std::string>();
    if (sw.axis != "t_f" && sw.axis != "waist") throw InvalidSpecError("sweep.axis", "sweep.axis must be 't_f' or 'waist'");
    sw.min = number(s, "min", "sweep");
    sw.max = number(s, "max", "sweep");
    if (s.contains("points")) sw.points = s["points"].get<int>();
    if (s.contains("scale")) sw.scale = s["scale"].get<std::string>();
    if (sw.scale != "linear" && sw.scale != "log") throw InvalidSpecError("sweep.scale", "sweep.scale must be 'linear' or 'log'");
    if (sw.axis == "t_f") {
      if (!s.contains("units")) throw InvalidSpecError("sweep.units", "a t_f sweep needs an explicit units field");
      sw.units = time_units_from_string(s["units"].get<std::string>());
    }
    if (s.contains("families")) {
      sw.families.clear();
      for (const auto& f : s["families"]) sw.families.push_back(family_from_string(f.get<std::string>()));
    }
    if (s.contains("simulate")) sw.simulate = s["simulate"].get<bool>();
    sw.values();  // range check
    c.sweep = sw;
  }
  if (doc.contains("output")) c.output = doc["output"].get<std::string>();
  if (doc.contains("threads")) c.threads = doc["threads"].get<int>();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpecError("config", "cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidSpecError("config", std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json config_to_json(const RunConfig& c) {
  json j;
  j["trap"] = {{"omega0", c.trap.omega0}, {"omega_f", c.trap.omega_f}, {"waist", c.trap.waist}, {"mass", c.trap.mass}};
  j["bound"] = {{"delta", c.delta}};
  j["protocol"] = {{"family", std::string(to_string(c.family))}, {"tau_f", c.tau_f_value}, {"units", to_string(c.tau_f_units)}};
  json sim = {{"model", std::string(to_string(c.sim.model))},
              {"dt", c.sim.dt},
              {"leak_threshold", c.sim.leak_threshold},
              {"auto_converge", c.sim.auto_converge},
              {"max_halvings", c.sim.max_halvings},
              {"state", c.sim.state}};
  if (c.sim.n_points) sim["n_points"] = *c.sim.n_points;
  if (c.sim.half_width) sim["half_width"] = *c.sim.half_width;
  j["sim"] = sim;
  if (c.sweep) {
    json fams = json::array();
    for (auto f : c.sweep->families) fams.push_back(std::string(to_string(f)));
    j["sweep"] = {{"axis", c.sweep->axis}, {"min", c.sweep->min},       {"max", c.sweep->max},
                  {"points", c.sweep->points}, {"scale", c.sweep->scale}, {"families", fams},
                  {"simulate", c.sweep->simulate}};
    if (c.sweep->axis == "t_f") j["sweep"]["units"] = to_string(c.sweep->units);
  }
  j["output"] = c.output;
  j["threads"] = c.threads;
  return j;
}

}  // namespace trapexp::cli
