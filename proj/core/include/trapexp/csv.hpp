#pragma once

#include <ostream>
#include <string>

#include "trapexp/control.hpp"
#include "trapexp/grid.hpp"
#include "trapexp/trajectory.hpp"

namespace trapexp {

/// Shortest round-trip-safe text for a double ("%.17g").
std::string format_number(double value);

/// Header "segment,kind,tau,u"; every segment sampled at both of its ends, so
/// each switch time appears once with the left limit and once with the right.
void write_control_csv(std::ostream& out, const Control& control, int samples_per_segment = 101);

/// Header "tau,b,bdot,bddot,u" with one-sided values at breakpoints.
void write_trajectory_csv(std::ostream& out, const ScalingTrajectory& traj, const Control& control,
                          int samples_per_segment = 201);

/// Header "tau,x,density"; rows for every `stride`-th grid point.
void write_snapshot_csv(std::ostream& out, double tau, const WaveFunction& psi, std::size_t stride = 1,
                        bool header = true);

}  // namespace trapexp
