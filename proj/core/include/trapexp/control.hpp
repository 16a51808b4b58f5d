#pragma once

#include <string_view>
#include <variant>
#include <vector>

namespace trapexp {

/// Dimensionless control u(tau) = omega^2(tau) / omega0^2 of a constant segment.
struct ConstantControl {
  double value = 0.0;
};

/// Control on a singular arc b^2 = 2 c1 tau + c2: u = (1 + c1^2) / b^4.
struct SingularArcControl {
  double c1 = 0.0;
  double c2 = 1.0;
};

/// Control obtained from the quintic ramp b(s) through the Ermakov equation.
struct QuinticRampControl {
  double gamma = 1.0;
  double tau_f = 1.0;
};

using ControlLaw = std::variant<ConstantControl, SingularArcControl, QuinticRampControl>;

double evaluate(const ControlLaw& law, double tau);

enum class SegmentKind { BangLow, BangHigh, Singular, Analytic };

std::string_view to_string(SegmentKind kind);
SegmentKind segment_kind_from_string(std::string_view name);

struct ControlSegment {
  SegmentKind kind = SegmentKind::Analytic;
  double start = 0.0;
  double end = 0.0;
  ControlLaw law = ConstantControl{};

  double u(double tau) const { return evaluate(law, tau); }
};

/// Piecewise control on [0, tau_f] plus optional impulses at the two
/// boundaries. An impulse J stands for u containing J * delta(tau - tau_b); it
/// changes bdot by -J * b and is applied as an instantaneous potential kick.
class Control {
 public:
  Control() = default;
  explicit Control(std::vector<ControlSegment> segments, double start_impulse = 0.0,
                   double end_impulse = 0.0);

  static Control constant(double value, double tau_f);

  const std::vector<ControlSegment>& segments() const noexcept { return segments_; }
  double start_impulse() const noexcept { return start_impulse_; }
  double end_impulse() const noexcept { return end_impulse_; }
  double tau_f() const;

  /// u(tau); at an interior breakpoint the later segment wins.
  double operator()(double tau) const;

  /// Index of the segment containing tau (later segment on ties).
  std::size_t segment_index(double tau) const;

  /// Sorted unique segment edges including 0 and tau_f.
  std::vector<double> breakpoints() const;

  /// Empty when segments tile [0, tau_f] without gaps or overlaps.
  std::vector<std::string> tiling_violations(double tolerance = 1e-12) const;

 private:
  std::vector<ControlSegment> segments_;
  double start_impulse_ = 0.0;
  double end_impulse_ = 0.0;
};

}  // namespace trapexp
