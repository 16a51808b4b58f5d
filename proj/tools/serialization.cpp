#include "serialization.hpp"

#include <cmath>
#include <variant>

#include "trapexp/ermakov.hpp"
#include "trapexp/error.hpp"

namespace trapexp::cli {

using nlohmann::json;

json number_or_null(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

namespace {

json law_to_json(const ControlLaw& law) {
  if (const auto* c = std::get_if<ConstantControl>(&law)) return {{"type", "constant"}, {"value", c->value}};
  if (const auto* s = std::get_if<SingularArcControl>(&law)) {
    return {{"type", "singular-arc"}, {"c1", s->c1}, {"c2", s->c2}};
  }
  const auto& q = std::get<QuinticRampControl>(law);
  return {{"type", "quintic-ramp"}, {"gamma", q.gamma}, {"tau_f", q.tau_f}};
}

ControlLaw law_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "constant") return ConstantControl{j.at("value").get<double>()};
  if (type == "singular-arc") return SingularArcControl{j.at("c1").get<double>(), j.at("c2").get<double>()};
  if (type == "quintic-ramp") return QuinticRampControl{j.at("gamma").get<double>(), j.at("tau_f").get<double>()};
  throw InvalidSpecError("segments.law.type", "unknown control law '" + type + "'");
}

}  // namespace

json control_to_json(const Control& control) {
  json segs = json::array();
  for (const auto& s : control.segments()) {
    segs.push_back({{"kind", std::string(to_string(s.kind))}, {"start", s.start}, {"end", s.end}, {"law", law_to_json(s.law)}});
  }
  return {{"segments", segs}, {"impulses", {{"start", control.start_impulse()}, {"end", control.end_impulse()}}}};
}

Control control_from_json(const json& j) {
  std::vector<ControlSegment> segs;
  for (const auto& s : j.at("segments")) {
    segs.push_back({segment_kind_from_string(s.at("kind").get<std::string>()), s.at("start").get<double>(),
                    s.at("end").get<double>(), law_from_json(s.at("law"))});
  }
  double start = 0.0;
  double end = 0.0;
  if (j.contains("impulses")) {
    start = j["impulses"].value("start", 0.0);
    end = j["impulses"].value("end", 0.0);
  }
  return Control(std::move(segs), start, end);
}

json protocol_to_json(const DesignedProtocol& design, const TrapSpec& trap) {
  const auto& p = design.protocol;
  json j;
  j["family"] = std::string(to_string(p.family));
  j["gamma"] = p.gamma;
  j["delta"] = p.delta ? json(*p.delta) : json(nullptr);
  j["tau_f"] = p.tau_f;
  j["tau_f_seconds"] = tau_to_seconds(trap, p.tau_f);
  j["c1"] = p.c1 ? json(*p.c1) : json(nullptr);
  j["c2"] = p.c2 ? json(*p.c2) : json(nullptr);
  j["switch_times"] = p.switch_times;
  json seconds = json::array();
  for (double t : p.switch_times) seconds.push_back(tau_to_seconds(trap, t));
  j["switch_times_seconds"] = seconds;
  j["u_before"] = p.u_before;
  j["u_after"] = p.u_after;
  j["max_abs_u"] = p.max_abs_u;
  j["expulsive"] = p.expulsive;
  j["respects_bound"] = p.respects_bound();
  j["verified"] = p.verified;
  j["boundary_conditions"] = {{"b", true}, {"bdot", design.trajectory.flags().bdot}, {"bddot", design.trajectory.flags().bddot}};
  j["omega0"] = trap.omega0;
  const auto ctrl = control_to_json(p.control);
  j["segments"] = ctrl["segments"];
  j["impulses"] = ctrl["impulses"];
  return j;
}

DesignedProtocol protocol_from_json(const json& j) {
  DesignedProtocol d;
  auto& p = d.protocol;
  p.family = family_from_string(j.at("family").get<std::string>());
  p.gamma = j.at("gamma").get<double>();
  if (j.contains("delta") && !j["delta"].is_null()) p.delta = j["delta"].get<double>();
  p.tau_f = j.at("tau_f").get<double>();
  if (j.contains("c1") && !j["c1"].is_null()) p.c1 = j["c1"].get<double>();
  if (j.contains("c2") && !j["c2"].is_null()) p.c2 = j["c2"].get<double>();
  if (j.contains("switch_times")) p.switch_times = j["switch_times"].get<std::vector<double>>();
  p.u_before = j.value("u_before", 1.0);
  p.u_after = j.value("u_after", 1.0 / std::pow(p.gamma, 4));
  p.max_abs_u = j.value("max_abs_u", 0.0);
  p.expulsive = j.value("expulsive", false);
  p.verified = j.value("verified", p.gamma >= 1.0);
  p.control = control_from_json(j);
  if (p.control.tiling_violations().empty() && p.tau_f > 0.0) {
    d.trajectory = integrate_ermakov(p.control, {1.0, 0.0}, p.tau_f);
  }
  return d;
}

json report_to_json(const FidelityReport& r) {
  return {{"F_b", r.F_b},
          {"F_EL", r.F_EL ? json(*r.F_EL) : json(nullptr)},
          {"F_2nd", r.F_second_order},
          {"perturbation_breakdown", r.breakdown},
          {"V1_avg", r.V1_avg},
          {"lambda_tilde", r.lambda_tilde},
          {"n", r.n}};
}

json diagnostics_to_json(const EvolveDiagnostics& d) {
  return {{"norm_drift", d.norm_drift},
          {"max_edge_probability", d.max_edge_probability},
          {"max_abs_u", d.max_abs_u},
          {"steps", d.steps}};
}

json convergence_to_json(const ConvergenceReport& c) {
  return {{"dt", c.dt},
          {"fidelity", c.fidelity},
          {"fidelity_half_dt", c.fidelity_half_dt},
          {"fidelity_double_grid", c.fidelity_double_grid},
          {"delta_dt", c.delta_dt},
          {"delta_grid", c.delta_grid},
          {"tolerance", kConvergenceTolerance},
          {"converged", c.converged}};
}

}  // namespace trapexp::cli
