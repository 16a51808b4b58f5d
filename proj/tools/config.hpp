#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trapexp/protocol.hpp"
#include "trapexp/simulator.hpp"
#include "trapexp/units.hpp"

namespace trapexp::cli {

enum class TimeUnits { Seconds, Dimensionless };

struct SweepSpec {
  std::string axis = "t_f";  // "t_f" or "waist"
  double min = 0.0;
  double max = 0.0;
  int points = 10;
  std::string scale = "linear";  // "linear" or "log"
  TimeUnits units = TimeUnits::Dimensionless;  // t_f axis only; waist is always metres
  std::vector<Family> families{Family::BangBang, Family::BangSingularBang, Family::Unconstrained,
                               Family::Polynomial};
  bool simulate = true;

  std::vector<double> values() const;
};

struct SimSettings {
  PotentialModel model = PotentialModel::Quartic;
  double dt = 5e-4;
  std::optional<std::size_t> n_points;
  std::optional<double> half_width;
  double leak_threshold = 1e-4;
  bool auto_converge = true;
  int max_halvings = 4;
  int state = 0;

  /// SimConfig for a run with the given gamma and waist.
  SimConfig resolve(double gamma, double w_tilde) const;
};

struct RunConfig {
  TrapSpec trap;
  bool mass_defaulted = true;
  double delta = 1.0;
  Family family = Family::BangSingularBang;
  double tau_f_value = 5.0;
  TimeUnits tau_f_units = TimeUnits::Dimensionless;
  SimSettings sim;
  std::optional<SweepSpec> sweep;
  std::string output = ".";
  int threads = 0;  // 0 = available cores

  /// Reference trap: omega(0) = 2pi 2500 Hz, omega(t_f) = 2pi 25 Hz,
  /// waist 20 x 1060 nm, delta = 1, bsb at tau_f = 5.
  static RunConfig defaults();

  double tau_f() const;  // dimensionless
  DimensionlessParams dimensionless() const { return to_dimensionless(trap); }
};

/// Merges a JSON document into `base`; unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc, RunConfig base = RunConfig::defaults());
RunConfig load_config(const std::string& path);

nlohmann::json config_to_json(const RunConfig& cfg);

TimeUnits time_units_from_string(const std::string& name);
std::string to_string(TimeUnits units);

}  // namespace trapexp::cli
