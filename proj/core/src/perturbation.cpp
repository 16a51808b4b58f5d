#include "trapexp/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "trapexp/ermakov.hpp"
#include "trapexp/error.hpp"
#include "trapexp/hermite.hpp"
#include "trapexp/protocol.hpp"
#include "trapexp/quadrature.hpp"

namespace trapexp {

namespace {

bool coupled(int n, int nprime) {
  const int d = std::abs(n - nprime);
  return d % 2 == 0 && d <= 4;
}

int alpha_nodes(int n, int nprime) { return (n + nprime + 6) / 2; }  // ceil((n+n'+5)/2)

std::vector<double> merged_breaks(const ScalingTrajectory& traj, const Control& u, double tau) {
  std::vector<double> breaks{0.0, tau};
  for (double t : traj.breakpoints()) {
    if (t > 0.0 && t < tau) breaks.push_back(t);
  }
  for (double t : u.breakpoints()) {
    if (t > 0.0 && t < tau) breaks.push_back(t);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

// Evaluates traj and u on the segment that owns the panel midpoint, so
// one-sided limits are used at breakpoints.
struct PanelEvaluator {
  const ScalingTrajectory& traj;
  const Control& u;
  std::size_t traj_seg;
  std::size_t u_seg;

  PanelEvaluator(const ScalingTrajectory& t, const Control& c, double a, double b)
      : traj(t), u(c), traj_seg(t.segment_index(0.5 * (a + b))), u_seg(c.segment_index(0.5 * (a + b))) {}

  ScalingState state(double tau) const { return traj.on_segment(traj_seg, tau); }
  double control(double tau) const { return u.segments()[u_seg].u(tau); }
};

struct PanelSum {
  Complex value;
  double magnitude = 0.0;  // integral of |b^4 u|, the scale of accumulated roundoff
};

PanelSum beta_on_panels(const ScalingTrajectory& traj, const Control& u, int shift,
                        const std::vector<double>& edges) {
  const auto& rule = gauss_legendre_32();
  Complex total{};
  double magnitude = 0.0;
  double theta_start = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    const PanelEvaluator ev(traj, u, a, b);
    auto inverse_square = [&](double t) {
      const double bb = ev.state(t).b;
      return 1.0 / (bb * bb);
    };
    total += rule.integrate(
        [&](double t) {
          const double bb = ev.state(t).b;
          const double weight = bb * bb * bb * bb * ev.control(t);
          if (shift == 0) return Complex(weight, 0.0);
          const double theta = theta_start + rule.integrate(inverse_square, a, t);
          return std::polar(weight, -shift * theta);
        },
        a, b);
    magnitude += rule.integrate(
        [&](double t) {
          const double bb = ev.state(t).b;
          return std::abs(bb * bb * bb * bb * ev.control(t));
        },
        a, b);
    if (shift != 0) theta_start += rule.integrate(inverse_square, a, b);
  }
  return {total, magnitude};
}

}  // namespace

double hermite_alpha(int n, int nprime) {
  if (n < 0 || nprime < 0) throw DomainError("hermite_alpha requires non-negative indices");
  if (!coupled(n, nprime)) return 0.0;
  const auto rule = gauss_hermite(alpha_nodes(n, nprime));
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = rule.nodes[i];
    sum += rule.weights[i] * hermite_polynomial(n, y) * hermite_polynomial(nprime, y) * y * y * y * y;
  }
  return sum;
}

double quartic_matrix_element(int n, int nprime) {
  if (n < 0 || nprime < 0) throw DomainError("quartic_matrix_element requires non-negative indices");
  if (!coupled(n, nprime)) return 0.0;
  const int top = std::max(n, nprime);
  const auto rule = gauss_hermite(alpha_nodes(n, nprime));
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = rule.nodes[i];
    // hermite_functions carries exp(-y^2/2); undo it so the rule's weight applies.
    const auto phi = hermite_functions(top, y);
    const double undo = std::exp(y * y);
    sum += rule.weights[i] * phi[n] * phi[nprime] * undo * y * y * y * y;
  }
  return sum;
}

double lambda_tilde(double w_tilde, int n) {
  return 3.0 * (n * n + n + 0.5) / (4.0 * w_tilde * w_tilde);
}

Complex beta_integral(const ScalingTrajectory& traj, const Control& u, int n, int nprime, double tau) {
  const int shift = nprime - n;
  Complex impulses{};
  if (u.start_impulse() != 0.0) {
    const double b0 = traj.at_start().b;
    impulses += b0 * b0 * b0 * b0 * u.start_impulse();
  }
  if (tau <= 0.0) return impulses;
  auto edges = make_panels(merged_breaks(traj, u, tau), 0.5);
  Complex previous = beta_on_panels(traj, u, shift, edges).value;
  for (int k = 0; k < 12; ++k) {
    edges = refine_panels(edges);
    const auto current = beta_on_panels(traj, u, shift, edges);
    const double change = std::abs(current.value - previous);
    previous = current.value;
    const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(edges.size());
    if (change < std::max(1e-12, roundoff) * std::max(1.0, current.magnitude)) break;
  }
  if (u.end_impulse() != 0.0 && tau >= u.tau_f()) {
    const double bf = traj.at_end().b;
    const double theta = shift == 0 ? 0.0 : lewis_phase(traj, tau);
    impulses += std::polar(bf * bf * bf * bf * u.end_impulse(), -shift * theta);
  }
  return previous + impulses;
}

Complex first_order_amplitude(const ScalingTrajectory& traj, const Control& u, int n, int nprime,
                              double w_tilde, double tau_f) {
  if (!(w_tilde > 0.0)) throw DomainError("first_order_amplitude requires w_tilde > 0");
  if (n + nprime > 60) throw RangeError("first_order_amplitude supports n + n' <= 60");
  const double element = quartic_matrix_element(n, nprime);
  if (element == 0.0) return {};
  const Complex beta = beta_integral(traj, u, n, nprime, tau_f);
  return Complex(0.0, 1.0) * element * beta / (2.0 * w_tilde * w_tilde);
}

SecondOrderFidelity fidelity_second_order(const ScalingTrajectory& traj, const Control& u, int n,
                                          double w_tilde, double tau_f) {
  SecondOrderFidelity out;
  for (int shift : {-4, -2, 2, 4}) {
    const int m = n + shift;
    if (m < 0) continue;
    out.excitation += std::norm(first_order_amplitude(traj, u, n, m, w_tilde, tau_f));
  }
  if (out.excitation > 1.0) {
    out.breakdown = true;
    out.value = 0.0;
  } else {
    out.value = std::sqrt(1.0 - out.excitation);
  }
  return out;
}

double fidelity_bound(const ScalingTrajectory& traj, double w_tilde, int n, double tau_f) {
  const double lambda = lambda_tilde(w_tilde, n);
  std::vector<double> breaks{0.0};
  for (double t : traj.breakpoints()) {
    if (t > 0.0 && t < tau_f) breaks.push_back(t);
  }
  breaks.push_back(tau_f);
  QuadratureOptions opts;
  opts.tolerance = 1e-14;
  const double kinetic = integrate_composite(
      [&](double t) {
        const auto s = traj(t);
        return s.bdot * s.bdot * s.b * s.b;
      },
      breaks, opts);
  return 1.0 - lambda * tau_f - 3.0 * lambda * kinetic;
}

double f_el_bound(double tau_f, double gamma, double w_tilde) {
  const double g = gamma * gamma - 1.0;
  return 1.0 - 3.0 / (8.0 * w_tilde * w_tilde) * (tau_f + 3.0 * g * g / (4.0 * tau_f));
}

double avg_perturbation_energy(const ScalingTrajectory& traj, const Control& u, double w_tilde,
                               int n, double tau_f) {
  const Complex moment = beta_integral(traj, u, n, n, tau_f);
  return lambda_tilde(w_tilde, n) * moment.real() / tau_f;
}

FidelityReport perturbative_report(const DesignedProtocol& design, double w_tilde, int n) {
  const auto& p = design.protocol;
  FidelityReport r;
  r.n = n;
  r.lambda_tilde = lambda_tilde(w_tilde, n);
  if (!(p.tau_f > 0.0)) {
    // Zero-length protocol (gamma = 1 bang-bang): nothing happens.
    r.V1_avg = r.lambda_tilde;
    return r;
  }
  r.F_b = fidelity_bound(design.trajectory, w_tilde, n, p.tau_f);
  if (p.family == Family::Unconstrained && n == 0) r.F_EL = f_el_bound(p.tau_f, p.gamma, w_tilde);
  const auto second = fidelity_second_order(design.trajectory, p.control, n, w_tilde, p.tau_f);
  r.F_second_order = second.value;
  r.breakdown = second.breakdown;
  r.V1_avg = avg_perturbation_energy(design.trajectory, p.control, w_tilde, n, p.tau_f);
  return r;
}

}  // namespace trapexp
