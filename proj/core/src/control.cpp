#include "trapexp/control.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "trapexp/error.hpp"

namespace trapexp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double evaluate(const ControlLaw& law, double tau) {
  return std::visit(
      Overloaded{
          [](const ConstantControl& c) { return c.value; },
          [tau](const SingularArcControl& c) {
            const double b2 = 2.0 * c.c1 * tau + c.c2;
            return (1.0 + c.c1 * c.c1) / (b2 * b2);
          },
          [tau](const QuinticRampControl& c) {
            const double s = tau / c.tau_f;
            const double g = c.gamma - 1.0;
            const double s2 = s * s;
            const double s3 = s2 * s;
            const double b = 1.0 + g * (10.0 * s3 - 15.0 * s3 * s + 6.0 * s3 * s2);
            const double bddot = g * (60.0 * s - 180.0 * s2 + 120.0 * s3) / (c.tau_f * c.tau_f);
            return 1.0 / (b * b * b * b) - bddot / b;
          },
      },
      law);
}

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::BangLow: return "bang-low";
    case SegmentKind::BangHigh: return "bang-high";
    case SegmentKind::Singular: return "singular";
    case SegmentKind::Analytic: return "analytic";
  }
  return "analytic";
}

SegmentKind segment_kind_from_string(std::string_view name) {
  if (name == "bang-low") return SegmentKind::BangLow;
  if (name == "bang-high") return SegmentKind::BangHigh;
  if (name == "singular") return SegmentKind::Singular;
  if (name == "analytic") return SegmentKind::Analytic;
  throw ContractError("unknown segment kind '" + std::string(name) + "'");
}

Control::Control(std::vector<ControlSegment> segments, double start_impulse, double end_impulse)
    : segments_(std::move(segments)), start_impulse_(start_impulse), end_impulse_(end_impulse) {}

Control Control::constant(double value, double tau_f) {
  return Control({ControlSegment{SegmentKind::Analytic, 0.0, tau_f, ConstantControl{value}}});
}

double Control::tau_f() const { return segments_.empty() ? 0.0 : segments_.back().end; }

std::size_t Control::segment_index(double tau) const {
  if (segments_.empty()) throw ContractError("empty control");
  for (std::size_t i = segments_.size(); i-- > 0;) {
    if (tau >= segments_[i].start) return i;
  }
  return 0;
}

double Control::operator()(double tau) const { return segments_[segment_index(tau)].u(tau); }

std::vector<double> Control::breakpoints() const {
  std::vector<double> out;
  for (const auto& s : segments_) {
    out.push_back(s.start);
    out.push_back(s.end);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> Control::tiling_violations(double tolerance) const {
  std::vector<std::string> issues;
  if (segments_.empty()) {
    issues.emplace_back("control has no segments");
    return issues;
  }
  auto describe = [](const char* what, std::size_t i, double a, double b) {
    std::ostringstream os;
    os.precision(17);
    os << what << " at segment " << i << ": " << a << " vs " << b;
    return os.str();
  };
  if (std::abs(segments_.front().start) > tolerance) {
    issues.push_back(describe("first segment does not start at 0", 0, segments_.front().start, 0.0));
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.end >= s.start)) issues.push_back(describe("negative-length segment", i, s.start, s.end));
    if (i > 0) {
      const double prev_end = segments_[i - 1].end;
      if (s.start < prev_end - tolerance) {
        issues.push_back(describe("overlap", i, prev_end, s.start));
      } else if (s.start > prev_end + tolerance) {
        issues.push_back(describe("gap", i, prev_end, s.start));
      }
    }
  }
  return issues;
}

}  // namespace trapexp
