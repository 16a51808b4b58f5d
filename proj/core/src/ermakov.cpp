#include "trapexp/ermakov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "trapexp/error.hpp"
#include "trapexp/fft.hpp"
#include "trapexp/hermite.hpp"
#include "trapexp/quadrature.hpp"

namespace trapexp {

namespace {

struct Derivative {
  double dx1;
  double dx2;
};

Derivative rhs(double u, double x1, double x2) {
  return {x2, -u * x1 + 1.0 / (x1 * x1 * x1)};
}

void check_state(double x1, double x2, double tau) {
  if (std::isnan(x1) || std::isnan(x2)) {
    std::ostringstream os;
    os << "Ermakov integration diverged (NaN) at tau = " << tau;
    throw SingularityError(os.str(), tau);
  }
  if (!(x1 > 0.0)) {
    std::ostringstream os;
    os << "Ermakov solution reached b <= 0 at tau = " << tau;
    throw SingularityError(os.str(), tau);
  }
}

}  // namespace

ScalingTrajectory integrate_ermakov(const Control& u, OctState x0, double tau_f, double step) {
  if (!(step > 0.0)) throw ContractError("integration step must be positive");
  if (!(tau_f > 0.0)) throw ContractError("integration span must be positive");
  check_state(x0.x1, x0.x2, 0.0);

  double x1 = x0.x1;
  double x2 = x0.x2;
  // A zero-impulse control has no kick; otherwise bdot jumps by -J b.
  x2 -= u.start_impulse() * x1;

  std::vector<TrajectorySegment> pieces;
  for (const auto& seg : u.segments()) {
    const double a = std::max(0.0, seg.start);
    const double b = std::min(tau_f, seg.end);
    if (!(b > a)) continue;
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / step - 1e-9)));
    const double h = (b - a) / n;
    auto samples = std::make_shared<DenseArc::Samples>();
    samples->tau.reserve(n + 1);
    // du/dtau by central differences, one-sided at the segment ends.
    auto u_rate = [&](double t) {
      const double eps = 1e-6 * std::max(1.0, b - a);
      const double lo = std::max(a, t - eps);
      const double hi = std::min(b, t + eps);
      return (seg.u(hi) - seg.u(lo)) / (hi - lo);
    };
    auto record = [&](double t) {
      const double u_t = seg.u(t);
      samples->tau.push_back(t);
      samples->b.push_back(x1);
      samples->bdot.push_back(x2);
      samples->bddot.push_back(rhs(u_t, x1, x2).dx2);
      samples->jerk.push_back(-u_rate(t) * x1 - u_t * x2 - 3.0 * x2 / (x1 * x1 * x1 * x1));
    };
    record(a);
    for (int i = 0; i < n; ++i) {
      const double t = a + i * h;
      const double tm = t + 0.5 * h;
      const double te = (i + 1 == n) ? b : t + h;
      const auto k1 = rhs(seg.u(t), x1, x2);
      const auto k2 = rhs(seg.u(tm), x1 + 0.5 * h * k1.dx1, x2 + 0.5 * h * k1.dx2);
      const auto k3 = rhs(seg.u(tm), x1 + 0.5 * h * k2.dx1, x2 + 0.5 * h * k2.dx2);
      const auto k4 = rhs(seg.u(te), x1 + h * k3.dx1, x2 + h * k3.dx2);
      x1 += h / 6.0 * (k1.dx1 + 2.0 * k2.dx1 + 2.0 * k3.dx1 + k4.dx1);
      x2 += h / 6.0 * (k1.dx2 + 2.0 * k2.dx2 + 2.0 * k3.dx2 + k4.dx2);
      check_state(x1, x2, te);
      record(te);
    }
    pieces.push_back({a, b, DenseArc{std::move(samples)}});
  }
  if (pieces.empty()) throw ContractError("control does not cover (0, tau_f)");
  const double end_bdot = x2 - u.end_impulse() * x1;
  BoundaryFlags flags;
  flags.bdot = std::abs(x0.x2) < 1e-12 && std::abs(end_bdot) < 1e-6;
  flags.bddot = false;
  return ScalingTrajectory(std::move(pieces), flags);
}

ScalingTrajectory integrate_ermakov(const Control& u, OctState x0, double tau_f) {
  return integrate_ermakov(u, x0, tau_f, tau_f / 2e4);
}

double u_from_b(double b, double bddot) {
  if (!(b > 0.0)) throw DomainError("u_from_b requires b > 0");
  return 1.0 / (b * b * b * b) - bddot / b;
}

double ermakov_residual(const ScalingTrajectory& traj, const Control& u) {
  constexpr int kPoints = 10000;
  const double tau_f = traj.tau_f();
  const double h = tau_f / (kPoints - 1);
  auto breaks = traj.breakpoints();
  for (double t : u.breakpoints()) breaks.push_back(t);
  double worst = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double t = i * h;
    const bool near_break = std::any_of(breaks.begin(), breaks.end(),
                                        [&](double bp) { return std::abs(t - bp) <= h * (1.0 + 1e-9); });
    if (near_break) continue;
    const auto s = traj(t);
    const double r = s.bddot + u(t) * s.b - 1.0 / (s.b * s.b * s.b);
    if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double lewis_phase(const ScalingTrajectory& traj, double tau) {
  if (tau <= 0.0) return 0.0;
  std::vector<double> breaks{0.0};
  for (double t : traj.breakpoints()) {
    if (t > 0.0 && t < tau) breaks.push_back(t);
  }
  breaks.push_back(tau);
  QuadratureOptions opts;
  opts.tolerance = 1e-12;
  return integrate_composite(
      [&](double t) {
        const double b = traj(t).b;
        return 1.0 / (b * b);
      },
      breaks, opts);
}

WaveFunction mode_wavefunction(int n, double b, double bdot, double phase, const SpatialGrid& grid) {
  if (n < 0) throw ContractError("mode index must be non-negative");
  if (!(b > 0.0)) throw DomainError("mode width b must be positive");
  grid.validate();
  const double dx = grid.dx();
  const double width = b * std::sqrt(2.0 * n + 1.0);
  // Hermite oscillations have local wavelength ~ 2 pi b / sqrt(2n + 1).
  const double wavelength = 2.0 * std::numbers::pi * b / std::sqrt(2.0 * n + 1.0);
  if (wavelength / dx < 16.0) {
    throw GridError("grid too coarse for mode n=" + std::to_string(n));
  }
  if (grid.half_width < width + 4.0 * b) {
    throw GridError("grid too small for mode n=" + std::to_string(n));
  }
  // Chirp wavenumber bdot x / b must stay below the Nyquist limit where psi lives.
  if (std::abs(bdot) / b * (width + 4.0 * b) > 0.5 * std::numbers::pi / dx) {
    throw GridError("grid too coarse for chirp of mode n=" + std::to_string(n));
  }

  WaveFunction psi{grid, std::vector<Complex>(grid.n_points)};
  const Complex global = std::polar(1.0 / std::sqrt(b), -(n + 0.5) * phase);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double x = grid.x(j);
    const double phi = hermite_functions(n, x / b)[static_cast<std::size_t>(n)];
    psi.amplitudes[j] = global * phi * std::polar(1.0, 0.5 * bdot / b * x * x);
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "mode n=" << n << " not normalisable on grid (norm " << norm << ")";
    throw GridError(os.str());
  }
  return psi;
}

double invariant_expectation(const WaveFunction& psi, double b, double bdot) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-6) throw ContractError("invariant_expectation needs a normalised state");
  const auto p_psi = momentum_apply(psi);
  const double dx = psi.grid.dx();
  double position = 0.0;
  double momentum = 0.0;
  for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
    const double x = psi.grid.x(j);
    position += x * x * std::norm(psi.amplitudes[j]);
    momentum += std::norm(b * p_psi[j] - bdot * x * psi.amplitudes[j]);
  }
  return 0.5 * (position / (b * b) + momentum) * dx;
}

}  // namespace trapexp
