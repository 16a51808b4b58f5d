#include "trapexp/units.hpp"

#include <cmath>
#include <string>

#include "trapexp/error.hpp"

namespace trapexp {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidSpecError(name, std::string("invalid trap spec: ") + name +
                                     " must be positive and finite");
  }
}

}  // namespace

void TrapSpec::validate() const {
  require_positive(omega0, "omega0");
  require_positive(omega_f, "omega_f");
  require_positive(waist, "waist");
  require_positive(mass, "mass");
}

double TrapSpec::gamma() const { return std::sqrt(omega0 / omega_f); }

double TrapSpec::oscillator_length() const { return std::sqrt(kHbar / (mass * omega0)); }

double TrapSpec::dimensionless_waist() const { return waist / oscillator_length(); }

DimensionlessParams to_dimensionless(const TrapSpec& spec) {
  spec.validate();
  return {spec.gamma(), spec.dimensionless_waist(), spec.omega0};
}

double seconds_to_tau(const TrapSpec& spec, double seconds) { return spec.omega0 * seconds; }
double tau_to_seconds(const TrapSpec& spec, double tau) { return tau / spec.omega0; }
double metres_to_length(const TrapSpec& spec, double metres) {
  return metres / spec.oscillator_length();
}
double length_to_metres(const TrapSpec& spec, double length) {
  return length * spec.oscillator_length();
}

void ControlBound::validate(double gamma) const {
  if (!(delta > 0.0)) {
    throw InfeasibleError("control bound delta must be positive", delta);
  }
  const double product = delta * std::pow(gamma, 4);
  if (!(product > 1.0)) {
    throw InfeasibleError("infeasible parameters: delta * gamma^4 must exceed 1", product);
  }
}

}  // namespace trapexp
