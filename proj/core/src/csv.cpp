#include "trapexp/csv.hpp"

#include <cstdio>

namespace trapexp {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_control_csv(std::ostream& out, const Control& control, int samples_per_segment) {
  out << "segment,kind,tau,u\n";
  const auto& segs = control.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const int count = s.end > s.start ? std::max(2, samples_per_segment) : 1;
    for (int k = 0; k < count; ++k) {
      const double t = count == 1 ? s.start : s.start + (s.end - s.start) * k / (count - 1);
      out << i << ',' << to_string(s.kind) << ',' << format_number(t) << ',' << format_number(s.u(t)) << '\n';
    }
  }
}

void write_trajectory_csv(std::ostream& out, const ScalingTrajectory& traj, const Control& control,
                          int samples_per_segment) {
  out << "tau,b,bdot,bddot,u\n";
  const auto& segs = traj.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (!(s.end > s.start)) continue;
    const int count = std::max(2, samples_per_segment);
    const auto useg = control.segment_index(0.5 * (s.start + s.end));
    for (int k = 0; k < count; ++k) {
      const double t = s.start + (s.end - s.start) * k / (count - 1);
      const auto st = traj.on_segment(i, t);
      out << format_number(t) << ',' << format_number(st.b) << ',' << format_number(st.bdot) << ','
          << format_number(st.bddot) << ',' << format_number(control.segments()[useg].u(t)) << '\n';
    }
  }
}

void write_snapshot_csv(std::ostream& out, double tau, const WaveFunction& psi, std::size_t stride,
                        bool header) {
  if (header) out << "tau,x,density\n";
  stride = std::max<std::size_t>(1, stride);
  for (std::size_t j = 0; j < psi.amplitudes.size(); j += stride) {
    out << format_number(tau) << ',' << format_number(psi.grid.x(j)) << ','
        << format_number(std::norm(psi.amplitudes[j])) << '\n';
  }
}

}  // namespace trapexp
