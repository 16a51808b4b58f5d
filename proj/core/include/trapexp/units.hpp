#pragma once

// Physical trap parameters and the conversion into the dimensionless frame
// used by every numerical routine: time in 1/omega0, length in
// a0 = sqrt(hbar / (m omega0)), energy in hbar omega0.

namespace trapexp {

inline constexpr double kHbar = 1.054571817e-34;             // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kDefaultMass = 87.0 * kAtomicMassUnit;

struct TrapSpec {
  double omega0 = 0.0;   // rad/s
  double omega_f = 0.0;  // rad/s
  double waist = 0.0;    // m
  double mass = kDefaultMass;

  /// Throws InvalidSpecError naming the first non-positive field.
  void validate() const;

  /// sqrt(omega0 / omega_f); > 1 for an expansion.
  double gamma() const;

  /// waist / a0.
  double dimensionless_waist() const;

  /// Oscillator length of the initial trap, metres.
  double oscillator_length() const;
};

struct DimensionlessParams {
  double gamma = 1.0;
  double w_tilde = 0.0;
  double tau_per_second = 0.0;  // tau = tau_per_second * t
};

DimensionlessParams to_dimensionless(const TrapSpec& spec);

double seconds_to_tau(const TrapSpec& spec, double seconds);
double tau_to_seconds(const TrapSpec& spec, double tau);
double metres_to_length(const TrapSpec& spec, double metres);
double length_to_metres(const TrapSpec& spec, double length);

/// Bound |u(tau)| <= delta on the open interval (0, tau_f).
struct ControlBound {
  double delta = 1.0;

  /// Requires delta > 0 and delta * gamma^4 > 1; throws InfeasibleError.
  void validate(double gamma) const;
};

}  // namespace trapexp
