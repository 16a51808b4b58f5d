#include "trapexp/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "trapexp/error.hpp"

namespace trapexp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// b = sqrt(Q) from Q and its derivatives.
ScalingState from_square(double q, double dq, double ddq) {
  const double b = std::sqrt(q);
  return {b, dq / (2.0 * b), ddq / (2.0 * b) - dq * dq / (4.0 * b * q)};
}

ScalingState eval_dense(const DenseArc::Samples& s, double tau) {
  const auto& t = s.tau;
  std::size_t i = 0;
  if (t.size() > 2) {
    auto it = std::upper_bound(t.begin(), t.end(), tau);
    i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - t.begin()) - 1));
    i = std::min(i, t.size() - 2);
  }
  const double h = t[i + 1] - t[i];
  const double x = (tau - t[i]) / h;
  const double a0 = s.b[i];
  const double a1 = h * s.bdot[i];
  const double a2 = 0.5 * h * h * s.bddot[i];
  const double y = s.b[i + 1] - a0 - a1 - a2;
  const double yp = h * s.bdot[i + 1] - a1 - 2.0 * a2;
  const double ypp = h * h * s.bddot[i + 1] - 2.0 * a2;
  const double a3 = 10.0 * y - 4.0 * yp + 0.5 * ypp;
  const double a4 = -15.0 * y + 7.0 * yp - ypp;
  const double a5 = 6.0 * y - 3.0 * yp + 0.5 * ypp;
  const double v = a0 + x * (a1 + x * (a2 + x * (a3 + x * (a4 + x * a5))));
  const double dv = a1 + x * (2.0 * a2 + x * (3.0 * a3 + x * (4.0 * a4 + x * 5.0 * a5)));
  double ddv;
  if (s.jerk.size() == t.size()) {
    const double x2 = x * x;
    const double x3 = x2 * x;
    ddv = (2 * x3 - 3 * x2 + 1) * s.bddot[i] + (x3 - 2 * x2 + x) * h * s.jerk[i] +
          (-2 * x3 + 3 * x2) * s.bddot[i + 1] + (x3 - x2) * h * s.jerk[i + 1];
  } else {
    ddv = (2.0 * a2 + x * (6.0 * a3 + x * (12.0 * a4 + x * 20.0 * a5))) / (h * h);
  }
  return {v, dv / h, ddv};
}

}  // namespace

ScalingState evaluate(const Arc& arc, double tau) {
  return std::visit(
      Overloaded{
          [](const ConstantArc& a) { return ScalingState{a.value, 0.0, 0.0}; },
          [tau](const CoshArc& a) {
            const double d = a.delta;
            const double w = 2.0 * std::sqrt(d);
            const double amp = (d + 1.0) / (2.0 * d);
            return from_square((d - 1.0) / (2.0 * d) + amp * std::cosh(w * tau),
                               amp * w * std::sinh(w * tau), amp * w * w * std::cosh(w * tau));
          },
          [tau](const CosArc& a) {
            const double d = a.delta;
            const double g2 = a.gamma * a.gamma;
            const double g4 = g2 * g2;
            const double w = 2.0 * std::sqrt(d);
            const double amp = (d * g4 - 1.0) / (2.0 * d * g2);
            const double phase = w * (a.tau_f - tau);
            return from_square((d * g4 + 1.0) / (2.0 * d * g2) + amp * std::cos(phase),
                               amp * w * std::sin(phase), -amp * w * w * std::cos(phase));
          },
          [tau](const LinearSquareArc& a) {
            return from_square(2.0 * a.c1 * tau + a.c2, 2.0 * a.c1, 0.0);
          },
          [tau](const QuinticArc& a) {
            const double s = tau / a.tau_f;
            const double g = a.gamma - 1.0;
            const double s2 = s * s;
            const double s3 = s2 * s;
            return ScalingState{1.0 + g * (10.0 * s3 - 15.0 * s3 * s + 6.0 * s3 * s2),
                                g * (30.0 * s2 - 60.0 * s3 + 30.0 * s2 * s2) / a.tau_f,
                                g * (60.0 * s - 180.0 * s2 + 120.0 * s3) / (a.tau_f * a.tau_f)};
          },
          [tau](const DenseArc& a) { return eval_dense(*a.samples, tau); },
      },
      arc);
}

ScalingTrajectory::ScalingTrajectory(std::vector<TrajectorySegment> segments, BoundaryFlags flags)
    : segments_(std::move(segments)), flags_(flags) {
  if (segments_.empty()) throw ContractError("trajectory needs at least one segment");
}

std::size_t ScalingTrajectory::segment_index(double tau) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (tau <= segments_[i].end) return i;
  }
  return segments_.size() - 1;
}

ScalingState ScalingTrajectory::on_segment(std::size_t index, double tau) const {
  return evaluate(segments_.at(index).arc, tau);
}

ScalingState ScalingTrajectory::operator()(double tau) const {
  return on_segment(segment_index(tau), tau);
}

std::vector<double> ScalingTrajectory::breakpoints() const {
  std::vector<double> out;
  out.push_back(segments_.front().start);
  for (const auto& s : segments_) out.push_back(s.end);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double ScalingTrajectory::tau_f() const { return segments_.back().end; }

Representation ScalingTrajectory::representation() const {
  for (const auto& s : segments_) {
    if (std::holds_alternative<DenseArc>(s.arc)) return Representation::DenseSamples;
  }
  return Representation::ClosedForm;
}

ScalingState ScalingTrajectory::at_start() const {
  return on_segment(0, segments_.front().start);
}

ScalingState ScalingTrajectory::at_end() const {
  return on_segment(segments_.size() - 1, segments_.back().end);
}

}  // namespace trapexp
