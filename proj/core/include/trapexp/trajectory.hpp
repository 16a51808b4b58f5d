#pragma once

#include <memory>
#include <variant>
#include <vector>

namespace trapexp {

/// b together with its first two time derivatives.
struct ScalingState {
  double b = 1.0;
  double bdot = 0.0;
  double bddot = 0.0;
};

struct ConstantArc {
  double value = 1.0;
};

/// Expulsive bang from the initial trap: b^2 = (d-1)/(2d) + (d+1)/(2d) cosh(2 sqrt(d) tau).
struct CoshArc {
  double delta = 1.0;
};

/// Confining bang into the final trap:
/// b^2 = (d g^4 + 1)/(2 d g^2) + (d g^4 - 1)/(2 d g^2) cos(2 sqrt(d) (tau_f - tau)).
struct CosArc {
  double delta = 1.0;
  double gamma = 1.0;
  double tau_f = 0.0;
};

/// b^2 = 2 c1 tau + c2 (singular arc, unconstrained protocol).
struct LinearSquareArc {
  double c1 = 0.0;
  double c2 = 1.0;
};

/// b(s) = 1 + (g-1)(10 s^3 - 15 s^4 + 6 s^5), s = tau / tau_f.
struct QuinticArc {
  double gamma = 1.0;
  double tau_f = 1.0;
};

/// Samples of (b, bdot, bddot, b''') on a grid. b and bdot come from the
/// quintic Hermite interpolant; bddot from a cubic Hermite in (bddot, b'''),
/// which avoids the 1/h^2 roundoff of differentiating the quintic twice.
struct DenseArc {
  struct Samples {
    std::vector<double> tau;
    std::vector<double> b;
    std::vector<double> bdot;
    std::vector<double> bddot;
    std::vector<double> jerk;
  };
  std::shared_ptr<const Samples> samples;
};

using Arc = std::variant<ConstantArc, CoshArc, CosArc, LinearSquareArc, QuinticArc, DenseArc>;

ScalingState evaluate(const Arc& arc, double tau);

struct TrajectorySegment {
  double start = 0.0;
  double end = 0.0;
  Arc arc;
};

/// Which boundary conditions of the transitionless problem the family meets.
/// b(0)=1 and b(tau_f)=gamma always hold.
struct BoundaryFlags {
  bool bdot = true;   // bdot(0) = bdot(tau_f) = 0
  bool bddot = false; // bddot(0) = bddot(tau_f) = 0
};

enum class Representation { ClosedForm, DenseSamples };

/// Scaling factor b(tau) on [0, tau_f]; immutable once built.
class ScalingTrajectory {
 public:
  ScalingTrajectory() = default;
  ScalingTrajectory(std::vector<TrajectorySegment> segments, BoundaryFlags flags);

  ScalingState operator()(double tau) const;
  ScalingState on_segment(std::size_t index, double tau) const;
  std::size_t segment_index(double tau) const;

  const std::vector<TrajectorySegment>& segments() const noexcept { return segments_; }
  std::vector<double> breakpoints() const;
  double tau_f() const;
  BoundaryFlags flags() const noexcept { return flags_; }
  Representation representation() const;

  /// State just after 0 and just before tau_f (one-sided limits).
  ScalingState at_start() const;
  ScalingState at_end() const;

 private:
  std::vector<TrajectorySegment> segments_;
  BoundaryFlags flags_;
};

}  // namespace trapexp
