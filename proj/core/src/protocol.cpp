#include "trapexp/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "trapexp/error.hpp"
#include "trapexp/units.hpp"

namespace trapexp {

namespace {

// Tolerance for rounding just outside an inverse-function domain.
constexpr double kDomainSlack = 1e-12;

std::string format_value(const char* what, double value) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s (argument %.10g)", what, value);
  return buf;
}

double checked_acosh(double arg, const char* what) {
  if (arg < 1.0) {
    if (arg > 1.0 - kDomainSlack) return 0.0;
    throw InfeasibleError(format_value(what, arg), arg);
  }
  return std::acosh(arg);
}

double checked_acos(double arg, const char* what) {
  if (arg > 1.0 || arg < -1.0) {
    if (std::abs(arg) < 1.0 + kDomainSlack) return std::acos(std::clamp(arg, -1.0, 1.0));
    throw InfeasibleError(format_value(what, arg), arg);
  }
  return std::acos(arg);
}

void require_feasible(double gamma, double delta) {
  if (!(gamma > 0.0)) throw InfeasibleError("gamma must be positive", gamma);
  ControlBound{delta}.validate(gamma);
}

void fill_metadata(Protocol& p) {
  constexpr int kSamples = 2001;
  p.u_before = 1.0;
  p.u_after = 1.0 / std::pow(p.gamma, 4);
  p.verified = p.gamma >= 1.0;
  p.max_abs_u = 0.0;
  p.expulsive = false;
  for (const auto& seg : p.control.segments()) {
    if (!(seg.end > seg.start)) continue;
    for (int i = 0; i < kSamples; ++i) {
      const double t = seg.start + (seg.end - seg.start) * i / (kSamples - 1);
      const double u = seg.u(t);
      p.max_abs_u = std::max(p.max_abs_u, std::abs(u));
      if (u < 0.0) p.expulsive = true;
    }
  }
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::BangBang: return "bang-bang";
    case Family::BangSingularBang: return "bsb";
    case Family::Unconstrained: return "unconstrained";
    case Family::Polynomial: return "polynomial";
  }
  return "bang-bang";
}

Family family_from_string(std::string_view name) {
  if (name == "bang-bang" || name == "bangbang") return Family::BangBang;
  if (name == "bsb" || name == "bang-singular-bang") return Family::BangSingularBang;
  if (name == "unconstrained" || name == "euler-lagrange") return Family::Unconstrained;
  if (name == "polynomial") return Family::Polynomial;
  throw ContractError("unknown protocol family '" + std::string(name) + "'");
}

bool Protocol::respects_bound() const {
  if (!delta) return true;
  return max_abs_u <= *delta * (1.0 + 1e-12);
}

BangBangTimes bangbang_times(double gamma, double delta) {
  if (gamma == 1.0) return {0.0, 0.0};
  require_feasible(gamma, delta);
  const double g2 = gamma * gamma;
  const double g4 = g2 * g2;
  const double scale = 1.0 / (2.0 * std::sqrt(delta));
  const double arg1 = (delta * g4 + 1.0) / (g2 * (delta + 1.0));
  const double arg2 = g2 * (delta - 1.0) / (delta * g4 - 1.0);
  return {scale * checked_acosh(arg1, "infeasible parameters: arccosh argument below 1"),
          scale * checked_acos(arg2, "infeasible parameters: arccos argument outside [-1, 1]")};
}

DesignedProtocol bangbang_protocol(double gamma, double delta) {
  const auto times = bangbang_times(gamma, delta);
  const double tau1 = times.tau1;
  const double tau_f = times.total();

  Protocol p;
  p.family = Family::BangBang;
  p.gamma = gamma;
  p.delta = delta;
  p.tau_f = tau_f;
  p.switch_times = {tau1};
  p.control = Control({{SegmentKind::BangLow, 0.0, tau1, ConstantControl{-delta}},
                       {SegmentKind::BangHigh, tau1, tau_f, ConstantControl{delta}}});
  fill_metadata(p);

  ScalingTrajectory traj({{0.0, tau1, CoshArc{delta}}, {tau1, tau_f, CosArc{delta, gamma, tau_f}}},
                         BoundaryFlags{true, false});
  return {std::move(p), std::move(traj)};
}

double c1_max(double gamma, double delta) {
  const double g2 = gamma * gamma;
  return (delta * g2 * g2 - 1.0) / (2.0 * std::sqrt(delta) * g2);
}

double c1_upper(double gamma, double delta) {
  if (delta < 1.0) return c1_max(gamma, delta);
  const double g2 = gamma * gamma;
  const double x = (delta * g2 * g2 + (delta - 1.0) * g2 + 1.0) / (2.0 * delta * g2);
  return std::min(c1_max(gamma, delta), std::sqrt(delta * x * x + (1.0 - delta) * x - 1.0));
}

double c1_floor(double gamma) { return (gamma * gamma - 1.0) / 2e6; }

JunctionSquares bsb_junctions(double c1, double gamma, double delta) {
  if (!(c1 > 0.0)) throw DomainError("bsb_junctions requires c1 > 0");
  require_feasible(gamma, delta);
  const double g2 = gamma * gamma;
  const double g4 = g2 * g2;
  const double m = delta * g4 - 1.0;
  const double disc1 = (delta + 1.0) * (delta + 1.0) + 4.0 * c1 * c1 * delta;
  double disc2 = m * m - 4.0 * c1 * c1 * delta * g4;
  if (disc2 < 0.0) {
    const double cmax = c1_max(gamma, delta);
    if (c1 > cmax * (1.0 + 1e-14)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "c1 = %.10g exceeds c1_max = %.10g", c1, cmax);
      throw InfeasibleError(buf, c1);
    }
    disc2 = 0.0;
  }
  return {(delta - 1.0 + std::sqrt(disc1)) / (2.0 * delta),
          (delta * g4 + 1.0 + std::sqrt(disc2)) / (2.0 * delta * g2)};
}

BsbTimes bsb_interval_times(double c1, double gamma, double delta) {
  const auto j = bsb_junctions(c1, gamma, delta);
  const double g2 = gamma * gamma;
  const double g4 = g2 * g2;
  const double scale = 1.0 / (2.0 * std::sqrt(delta));
  // Arguments follow from continuity of b with the two bang branches:
  // (2 d X1 - d + 1)/(d + 1) and (2 d g^2 X2 - d g^4 - 1)/(d g^4 - 1), written
  // through the discriminants so that d g^4 -> 1 does not cancel.
  const double arg1 = std::sqrt((delta + 1.0) * (delta + 1.0) + 4.0 * c1 * c1 * delta) / (delta + 1.0);
  const double m = delta * g4 - 1.0;
  const double arg3 = std::sqrt(std::max(0.0, m * m - 4.0 * c1 * c1 * delta * g4)) / m;
  BsbTimes t;
  t.tau1 = scale * checked_acosh(arg1, "infeasible first bang: arccosh argument below 1");
  t.tau2 = std::max(0.0, (j.at_tau12 - j.at_tau1) / (2.0 * c1));
  t.tau3 = scale * checked_acos(arg3, "infeasible last bang: arccos argument outside [-1, 1]");
  return t;
}

double solve_c1(double tau_f, double gamma, double delta) {
  require_feasible(gamma, delta);
  const double tau_min = bangbang_times(gamma, delta).total();
  if (tau_f < tau_min * (1.0 - 1e-12)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "infeasible duration: tau_f = %.6f is below the bang-bang minimum time tau_min = %.6f",
                  tau_f, tau_min);
    throw InfeasibleDurationError(buf, tau_min);
  }
  const double hi = c1_upper(gamma, delta);
  if (delta >= 1.0 && tau_f <= tau_min * (1.0 + 1e-12)) return hi;
  const double lo = c1_floor(gamma);
  const double residual_lo = bsb_interval_times(lo, gamma, delta).total() - tau_f;
  if (residual_lo < 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "unsupported duration: tau_f = %.6g exceeds the longest supported duration %.6g",
                  tau_f, residual_lo + tau_f);
    throw InfeasibleError(buf, tau_f);
  }
  if (bsb_interval_times(hi, gamma, delta).total() - tau_f > 0.0) {
    throw MonotonicityError("tau_f(c1) does not bracket the requested duration");
  }

  // tau_f(c1) decreases in c1: residual > 0 at `left`, <= 0 at `right`.
  double left = std::log(lo);
  double right = std::log(hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (left + right);
    if (mid <= left || mid >= right) break;
    const double r = bsb_interval_times(std::exp(mid), gamma, delta).total() - tau_f;
    if (r == 0.0) return std::exp(mid);
    if (r > 0.0) {
      left = mid;
    } else {
      right = mid;
    }
  }
  const double c_left = std::exp(left);
  const double c_right = std::min(hi, std::exp(right));
  const double r_left = bsb_interval_times(c_left, gamma, delta).total() - tau_f;
  const double r_right = bsb_interval_times(c_right, gamma, delta).total() - tau_f;
  const double c1 = std::abs(r_left) < std::abs(r_right) ? c_left : c_right;
  const double residual = std::min(std::abs(r_left), std::abs(r_right));
  if (residual > 1e-10 * tau_f) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "c1 bisection stalled with residual %.3g (non-monotone tau_f(c1)?)",
                  residual);
    throw MonotonicityError(buf);
  }
  return c1;
}

double singular_control(double x1, double x2) {
  if (!(x1 > 0.0)) throw DomainError("singular_control requires x1 > 0");
  const double x1sq = x1 * x1;
  return (1.0 + x1sq * x2 * x2) / (x1sq * x1sq);
}

DesignedProtocol bsb_protocol(double tau_f, double gamma, double delta) {
  if (gamma == 1.0) {
    // No expansion: the singular arc with c1 = 0 is the static initial trap.
    if (!(tau_f > 0.0)) throw InfeasibleError("tau_f must be positive", tau_f);
    Protocol p;
    p.family = Family::BangSingularBang;
    p.gamma = 1.0;
    p.delta = delta;
    p.tau_f = tau_f;
    p.c1 = 0.0;
    p.c2 = 1.0;
    p.switch_times = {0.0, tau_f};
    p.control = Control({{SegmentKind::Singular, 0.0, tau_f, SingularArcControl{0.0, 1.0}}});
    fill_metadata(p);
    ScalingTrajectory traj({{0.0, tau_f, LinearSquareArc{0.0, 1.0}}}, BoundaryFlags{true, true});
    return {std::move(p), std::move(traj)};
  }
  const double c1 = solve_c1(tau_f, gamma, delta);
  const auto times = bsb_interval_times(c1, gamma, delta);
  const auto junctions = bsb_junctions(c1, gamma, delta);
  const double t1 = times.tau1;
  const double t12 = std::min(tau_f, times.tau1 + times.tau2);
  const double c2 = junctions.at_tau1 - 2.0 * c1 * t1;

  Protocol p;
  p.family = Family::BangSingularBang;
  p.gamma = gamma;
  p.delta = delta;
  p.tau_f = tau_f;
  p.c1 = c1;
  p.c2 = c2;
  p.switch_times = {t1, t12};
  p.control = Control({{SegmentKind::BangLow, 0.0, t1, ConstantControl{-delta}},
                       {SegmentKind::Singular, t1, t12, SingularArcControl{c1, c2}},
                       {SegmentKind::BangHigh, t12, tau_f, ConstantControl{delta}}});
  fill_metadata(p);

  ScalingTrajectory traj({{0.0, t1, CoshArc{delta}},
                          {t1, t12, LinearSquareArc{c1, c2}},
                          {t12, tau_f, CosArc{delta, gamma, tau_f}}},
                         BoundaryFlags{true, false});
  return {std::move(p), std::move(traj)};
}

DesignedProtocol unconstrained_protocol(double tau_f, double gamma) {
  if (!(tau_f > 0.0)) throw InfeasibleError("tau_f must be positive", tau_f);
  if (!(gamma > 0.0)) throw InfeasibleError("gamma must be positive", gamma);
  const double c1 = (gamma * gamma - 1.0) / (2.0 * tau_f);
  const double c2 = 1.0;

  Protocol p;
  p.family = Family::Unconstrained;
  p.gamma = gamma;
  p.tau_f = tau_f;
  p.c1 = c1;
  p.c2 = c2;
  // bdot jumps from 0 to c1 at the start and from c1/gamma to 0 at the end.
  p.control = Control({{SegmentKind::Analytic, 0.0, tau_f, SingularArcControl{c1, c2}}}, -c1,
                      c1 / (gamma * gamma));
  fill_metadata(p);

  ScalingTrajectory traj({{0.0, tau_f, LinearSquareArc{c1, c2}}}, BoundaryFlags{false, false});
  return {std::move(p), std::move(traj)};
}

DesignedProtocol polynomial_protocol(double tau_f, double gamma) {
  if (!(tau_f > 0.0)) throw InfeasibleError("tau_f must be positive", tau_f);
  if (!(gamma > 0.0)) throw InfeasibleError("gamma must be positive", gamma);
  Protocol p;
  p.family = Family::Polynomial;
  p.gamma = gamma;
  p.tau_f = tau_f;
  p.control = Control({{SegmentKind::Analytic, 0.0, tau_f, QuinticRampControl{gamma, tau_f}}});
  fill_metadata(p);

  ScalingTrajectory traj({{0.0, tau_f, QuinticArc{gamma, tau_f}}}, BoundaryFlags{true, true});
  return {std::move(p), std::move(traj)};
}

DesignedProtocol design(Family family, double tau_f, double gamma, double delta) {
  switch (family) {
    case Family::BangBang: return bangbang_protocol(gamma, delta);
    case Family::BangSingularBang: return bsb_protocol(tau_f, gamma, delta);
    case Family::Unconstrained: return unconstrained_protocol(tau_f, gamma);
    case Family::Polynomial: return polynomial_protocol(tau_f, gamma);
  }
  throw ContractError("unknown family");
}

double control_distance(const Control& a, const Control& b, int points) {
  const double tau_f = std::min(a.tau_f(), b.tau_f());
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = tau_f * i / (points - 1);
    worst = std::max(worst, std::abs(a(t) - b(t)));
  }
  return worst;
}

}  // namespace trapexp
