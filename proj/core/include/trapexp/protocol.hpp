#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trapexp/control.hpp"
#include "trapexp/trajectory.hpp"

namespace trapexp {

enum class Family { BangBang, BangSingularBang, Unconstrained, Polynomial };

std::string_view to_string(Family family);
/// Accepts "bang-bang", "bsb" (or "bang-singular-bang"), "unconstrained", "polynomial".
Family family_from_string(std::string_view name);

/// Designed control u(tau) with its metadata. Outside [0, tau_f] the trap sits
/// at u_before = 1 and u_after = 1/gamma^4; those values are never simulated.
struct Protocol {
  Family family = Family::BangBang;
  double gamma = 1.0;
  std::optional<double> delta;  // empty = unbounded
  double tau_f = 0.0;
  std::optional<double> c1;
  std::optional<double> c2;
  std::vector<double> switch_times;
  Control control;
  double u_before = 1.0;
  double u_after = 1.0;
  double max_abs_u = 0.0;     // sup over segment interiors, dense scan
  bool expulsive = false;     // u < 0 somewhere inside
  bool verified = true;       // false for compressions (gamma < 1)

  /// True when |u| <= delta (1 + 1e-12) on every segment interior (always true if unbounded).
  bool respects_bound() const;
};

struct DesignedProtocol {
  Protocol protocol;
  ScalingTrajectory trajectory;
};

struct BangBangTimes {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double total() const { return tau1 + tau2; }
};

/// Switch and final segment durations of the time-optimal bang-bang control.
/// Throws InfeasibleError with the offending argument on a domain violation.
BangBangTimes bangbang_times(double gamma, double delta);

DesignedProtocol bangbang_protocol(double gamma, double delta);

/// (delta gamma^4 - 1) / (2 sqrt(delta) gamma^2): largest c1 with real junctions.
double c1_max(double gamma, double delta);

/// Top of the c1 search bracket. For delta >= 1 this is b bdot at the
/// bang-bang switch point, where the junctions meet and the singular arc has
/// zero length (equal to c1_max when delta = 1). For delta < 1 the junctions
/// never meet and the bracket runs up to c1_max.
double c1_upper(double gamma, double delta);

/// Smallest c1 searched by solve_c1; caps tau_f near 10^6.
double c1_floor(double gamma);

struct JunctionSquares {
  double at_tau1 = 1.0;   // b^2 where the singular arc starts
  double at_tau12 = 1.0;  // b^2 where it ends
};

JunctionSquares bsb_junctions(double c1, double gamma, double delta);

struct BsbTimes {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
  double total() const { return tau1 + tau2 + tau3; }
};

BsbTimes bsb_interval_times(double c1, double gamma, double delta);

/// c1 with tau1 + tau2 + tau3 = tau_f, by bisection in log(c1) over
/// (c1_floor, c1_upper]. Throws InfeasibleDurationError below the minimum time,
/// InfeasibleError above the supported maximum, MonotonicityError when the
/// bracket does not hold.
double solve_c1(double tau_f, double gamma, double delta);

/// u_s = (1 + x1^2 x2^2) / x1^4; throws DomainError for x1 <= 0.
double singular_control(double x1, double x2);

DesignedProtocol bsb_protocol(double tau_f, double gamma, double delta);
DesignedProtocol unconstrained_protocol(double tau_f, double gamma);
DesignedProtocol polynomial_protocol(double tau_f, double gamma);

/// Dispatches on the family; bang-bang ignores tau_f, unbounded families ignore delta.
DesignedProtocol design(Family family, double tau_f, double gamma, double delta);

/// Samples the control densely and returns sup |u_a - u_b| over a uniform grid
/// of the common interval.
double control_distance(const Control& a, const Control& b, int points = 10001);

}  // namespace trapexp
