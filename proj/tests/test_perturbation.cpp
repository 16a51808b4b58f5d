#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "trapexp/ermakov.hpp"
#include "trapexp/error.hpp"
#include "trapexp/perturbation.hpp"
#include "trapexp/protocol.hpp"

using namespace trapexp;

namespace {

ScalingTrajectory flat(double tau_f) { return ScalingTrajectory({{0.0, tau_f, ConstantArc{1.0}}}, {}); }

}  // namespace

TEST_CASE("alpha integrals") {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  CHECK(hermite_alpha(0, 1) == 0.0);
  CHECK(hermite_alpha(0, 0) == doctest::Approx(0.75 * sqrt_pi).epsilon(1e-14));
  CHECK(hermite_alpha(0, 0) == doctest::Approx(1.329340).epsilon(1e-6));
  CHECK(hermite_alpha(0, 2) == doctest::Approx(6.0 * sqrt_pi).epsilon(1e-14));
  CHECK(hermite_alpha(0, 2) == doctest::Approx(10.634723).epsilon(1e-7));
  CHECK(hermite_alpha(3, 9) == 0.0);
  CHECK_THROWS_AS(hermite_alpha(-1, 0), DomainError);
}

TEST_CASE("alpha matches Gaussian moments for n, n' <= 10") {
  for (int n = 0; n <= 10; ++n) {
    for (int m = 0; m <= 10; ++m) {
      const double oracle_value = oracle::alpha_by_moments(n, m);
      const double d = std::abs(n - m);
      if (d == 0 || d == 2 || d == 4) {
        CHECK(std::abs(hermite_alpha(n, m) - oracle_value) <= 1e-12 * std::abs(oracle_value));
      } else {
        CHECK(hermite_alpha(n, m) == 0.0);
        CHECK(std::abs(oracle_value) < 1e-20);
      }
    }
  }
}

TEST_CASE("normalised quartic matrix elements") {
  CHECK(quartic_matrix_element(0, 0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(quartic_matrix_element(0, 2) == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(quartic_matrix_element(0, 4) == doctest::Approx(std::sqrt(6.0) / 2.0).epsilon(1e-14));
  // <n|y^4|n> = 3 (2n^2 + 2n + 1) / 4
  for (int n = 0; n <= 30; ++n) {
    CHECK(quartic_matrix_element(n, n) == doctest::Approx(0.75 * (2 * n * n + 2 * n + 1)).epsilon(1e-12));
  }
  for (int n = 0; n <= 8; ++n) {
    for (int m = 0; m <= 8; ++m) {
      const double from_alpha =
          hermite_alpha(n, m) / std::sqrt(std::numbers::pi * std::pow(2.0, n + m) * std::tgamma(n + 1.0) *
                                          std::tgamma(m + 1.0));
      CHECK(quartic_matrix_element(n, m) == doctest::Approx(from_alpha).epsilon(1e-12));
    }
  }
}

TEST_CASE("beta integral for a static trap") {
  const auto traj = flat(6.0);
  const auto u = Control::constant(1.0, 6.0);
  for (double tau : {0.5, 3.0, 6.0}) {
    const auto diagonal = beta_integral(traj, u, 1, 1, tau);
    CHECK(diagonal.real() == doctest::Approx(tau).epsilon(1e-13));
    CHECK(std::abs(diagonal.imag()) < 1e-14);
    const Complex expected = (1.0 - std::exp(Complex(0.0, -2.0 * tau))) / Complex(0.0, 2.0);
    CHECK(std::abs(beta_integral(traj, u, 0, 2, tau) - expected) < 1e-12);
  }
}

TEST_CASE("beta integral for bang-bang against adaptive quadrature") {
  const auto d = bangbang_protocol(10.0, 1.0);
  const auto& traj = d.trajectory;
  const double tau1 = d.protocol.switch_times[0];
  const double tau_f = d.protocol.tau_f;
  auto b4u = [&](double t) {
    const double b = traj(t).b;
    return b * b * b * b * d.protocol.control(t);
  };
  const double diagonal = oracle::adaptive_split(b4u, 0.0, tau_f, {tau1});
  CHECK(std::abs(beta_integral(traj, d.protocol.control, 0, 0, tau_f) - Complex(diagonal, 0.0)) < 1e-9);

  // Off-diagonal, with the Lewis phase in closed form: on the first bang
  // b^2 = cosh(2 tau), on the second b^2 = a + c cos(2 (tau_f - tau)) with a^2 - c^2 = 1.
  const double g2 = 100.0;
  auto closed_G = [&](double s) { return std::atan(std::tan(s) / g2); };
  auto theta = [&](double t) {
    if (t <= tau1) return 0.5 * std::atan(std::sinh(2.0 * t));
    return 0.5 * std::atan(std::sinh(2.0 * tau1)) + closed_G(tau_f - tau1) - closed_G(tau_f - t);
  };
  CHECK(std::abs(theta(tau_f) - lewis_phase(traj, tau_f)) < 1e-12);
  auto re = [&](double t) { return b4u(t) * std::cos(2.0 * theta(t)); };
  auto im = [&](double t) { return -b4u(t) * std::sin(2.0 * theta(t)); };
  const Complex off(oracle::adaptive_split(re, 0.0, tau_f, {tau1}, 1e-11),
                    oracle::adaptive_split(im, 0.0, tau_f, {tau1}, 1e-11));
  CHECK(std::abs(beta_integral(traj, d.protocol.control, 0, 2, tau_f) - off) < 1e-8);
}

TEST_CASE("first-order amplitudes") {
  const double w = 50.0;
  const double tau_f = 4.0;
  const auto traj = flat(tau_f);
  const auto u = Control::constant(1.0, tau_f);
  CHECK(std::abs(first_order_amplitude(traj, u, 0, 1, w, tau_f)) == 0.0);
  CHECK(std::abs(first_order_amplitude(traj, u, 2, 9, w, tau_f)) == 0.0);
  CHECK(std::abs(first_order_amplitude(traj, u, 0, 0, w, tau_f)) ==
        doctest::Approx(3.0 * tau_f / (8.0 * w * w)).epsilon(1e-13));
  CHECK_THROWS_AS(first_order_amplitude(traj, u, 31, 31, w, tau_f), RangeError);
}

TEST_CASE("second-order fidelity") {
  const double tau_f = 4.0;
  const auto traj = flat(tau_f);
  const auto u = Control::constant(1.0, tau_f);
  SUBCASE("static trap, closed-form betas") {
    const double w = 10.0;
    const double f02 = 3.0 / std::sqrt(2.0) * std::abs(std::sin(tau_f)) / (2.0 * w * w);
    const double f04 = std::sqrt(6.0) / 2.0 * std::abs(std::sin(2.0 * tau_f)) / 2.0 / (2.0 * w * w);
    const auto F = fidelity_second_order(traj, u, 0, w, tau_f);
    CHECK(F.value == doctest::Approx(std::sqrt(1.0 - f02 * f02 - f04 * f04)).epsilon(1e-13));
    CHECK(1.0 - F.value < 1.0 / std::pow(w, 4));
    CHECK_FALSE(F.breakdown);
  }
  SUBCASE("vanishing perturbation") {
    CHECK(fidelity_second_order(traj, u, 0, 1e8, tau_f).value == 1.0);
  }
  SUBCASE("breakdown is flagged and clamped") {
    const auto F = fidelity_second_order(traj, u, 0, 0.3, tau_f);
    CHECK(F.breakdown);
    CHECK(F.value == 0.0);
  }
  SUBCASE("1 - F falls as w^-4 for the bsb protocol") {
    const auto d = bsb_protocol(5.0, 10.0, 1.0);
    double previous = 0.0;
    double previous_loss = 0.0;
    for (double w : {100.0, 200.0, 400.0, 800.0}) {
      const auto F = fidelity_second_order(d.trajectory, d.protocol.control, 0, w, 5.0);
      CHECK(F.value > previous - 1e-15);
      if (previous_loss > 0.0) {
        const double slope = std::log((1.0 - F.value) / previous_loss) / std::log(2.0);
        CHECK(slope == doctest::Approx(-4.0).epsilon(0.01));
      }
      previous = F.value;
      previous_loss = 1.0 - F.value;
    }
  }
}

TEST_CASE("fidelity bound") {
  const double w = 98.0;
  CHECK(fidelity_bound(flat(3.0), w, 0, 3.0) == doctest::Approx(1.0 - lambda_tilde(w, 0) * 3.0).epsilon(1e-15));
  CHECK(fidelity_bound(flat(3.0), w, 2, 3.0) == doctest::Approx(1.0 - lambda_tilde(w, 2) * 3.0).epsilon(1e-15));
  CHECK(lambda_tilde(w, 0) == doctest::Approx(3.0 / (8.0 * w * w)).epsilon(1e-15));
  // (n+1)^2 + n^2 = 2 (n^2 + n + 1/2)
  for (int n = 0; n < 6; ++n) {
    CHECK(lambda_tilde(1.0, n) == doctest::Approx(3.0 / 8.0 * ((n + 1) * (n + 1) + n * n)));
  }

  for (double gamma : {2.0, 10.0}) {
    for (double tau_f : {0.5, 7.854, 80.0}) {
      const auto d = unconstrained_protocol(tau_f, gamma);
      CHECK(std::abs(fidelity_bound(d.trajectory, w, 0, tau_f) - f_el_bound(tau_f, gamma, w)) < 1e-12);
    }
  }
}

TEST_CASE("F_EL closed form") {
  const double w = 40.0;
  CHECK(f_el_bound(2.0, 1.0, w) == doctest::Approx(1.0 - 3.0 * 2.0 / (8.0 * w * w)).epsilon(1e-15));
  const double gamma = 10.0;
  const double best = std::sqrt(3.0) * (gamma * gamma - 1.0) / 2.0;
  const double f_best = f_el_bound(best, gamma, w);
  CHECK(f_best == doctest::Approx(1.0 - 3.0 * std::sqrt(3.0) / (8.0 * w * w) * (gamma * gamma - 1.0)).epsilon(1e-14));
  CHECK(f_el_bound(best * 1.01, gamma, w) < f_best);
  CHECK(f_el_bound(best * 0.99, gamma, w) < f_best);
}

TEST_CASE("F_b = 1 - V1 tau_f for every family") {
  const double w = 98.34;
  const double gamma = 10.0;
  for (double tau_f : {4.0, 7.854, 25.0}) {
    for (Family f : {Family::BangSingularBang, Family::Unconstrained, Family::Polynomial}) {
      const auto d = design(f, tau_f, gamma, 1.0);
      const double fb = fidelity_bound(d.trajectory, w, 0, tau_f);
      const double v1 = avg_perturbation_energy(d.trajectory, d.protocol.control, w, 0, tau_f);
      CHECK(std::abs(fb - (1.0 - v1 * tau_f)) < 1e-10);
    }
  }
  const auto bb = bangbang_protocol(gamma, 1.0);
  const double tau_min = bb.protocol.tau_f;
  CHECK(std::abs(fidelity_bound(bb.trajectory, w, 1, tau_min) -
                 (1.0 - avg_perturbation_energy(bb.trajectory, bb.protocol.control, w, 1, tau_min) * tau_min)) <
        1e-10);
  CHECK(avg_perturbation_energy(flat(3.0), Control::constant(1.0, 3.0), w, 0, 3.0) ==
        doctest::Approx(lambda_tilde(w, 0)).epsilon(1e-14));
}

TEST_CASE("unconstrained bound lies above the bounded families") {
  const double w = 98.34;
  const double gamma = 10.0;
  for (double tau_f : {4.0, 6.0, 7.854, 12.0, 40.0}) {
    const double unconstrained = f_el_bound(tau_f, gamma, w);
    for (Family f : {Family::BangSingularBang, Family::Polynomial}) {
      const auto d = design(f, tau_f, gamma, 1.0);
      CHECK(unconstrained >= fidelity_bound(d.trajectory, w, 0, tau_f));
    }
  }
}

TEST_CASE("perturbative report") {
  const auto d = unconstrained_protocol(7.854, 10.0);
  const auto r = perturbative_report(d, 98.34);
  REQUIRE(r.F_EL.has_value());
  CHECK(std::abs(*r.F_EL - r.F_b) < 1e-12);
  CHECK(r.F_b <= 1.0);
  CHECK(r.F_second_order >= 0.0);
  CHECK(r.F_second_order <= 1.0);
  CHECK_FALSE(perturbative_report(bsb_protocol(5.0, 10.0, 1.0), 98.34).F_EL.has_value());
}

TEST_CASE("long protocols keep closed-form accuracy") {
  // Thousands of panels: refinement must stop at the summation roundoff.
  const double gamma = 10.0;
  const double w = 98.3;
  const double g = gamma * gamma - 1.0;
  for (double tau_f : {800.0, 3000.0}) {
    const auto un = unconstrained_protocol(tau_f, gamma);
    CHECK(std::abs(fidelity_bound(un.trajectory, w, 0, tau_f) - f_el_bound(tau_f, gamma, w)) < 1e-12);
    const double v1 = avg_perturbation_energy(un.trajectory, un.protocol.control, w, 0, tau_f);
    const double closed = lambda_tilde(w, 0) * (1.0 + 3.0 * g * g / (4.0 * tau_f * tau_f));
    CHECK(v1 == doctest::Approx(closed).epsilon(1e-10));
    const auto bsb = bsb_protocol(tau_f, gamma, 1.0);
    const auto r = perturbative_report(bsb, w);
    CHECK(std::abs(r.F_b - (1.0 - r.V1_avg * tau_f)) < 1e-10);
  }
}
