#include <cmath>
#include <numbers>

#include "doctest.h"
#include "trapexp/error.hpp"
#include "trapexp/units.hpp"

using namespace trapexp;

namespace {

TrapSpec reference_trap() {
  TrapSpec spec;
  spec.omega0 = 2.0 * std::numbers::pi * 2500.0;
  spec.omega_f = 2.0 * std::numbers::pi * 25.0;
  spec.waist = 20.0 * 1060e-9;
  spec.mass = 87.0 * kAtomicMassUnit;
  return spec;
}

}  // namespace

TEST_CASE("gamma of identical traps is one") {
  TrapSpec spec = reference_trap();
  spec.omega_f = spec.omega0;
  CHECK(to_dimensionless(spec).gamma == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hundredfold frequency reduction gives gamma = 10") {
  CHECK(to_dimensionless(reference_trap()).gamma == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("dimensionless waist matches a hand evaluation of the oscillator length") {
  // hbar / (m omega0) with m = 87 u, omega0 = 2 pi 2500 Hz, evaluated term by term.
  const double mass = 87.0 * 1.66053906660e-27;            // 1.44466898794e-25 kg
  const double omega0 = 15707.963267948966;                 // rad/s
  const double a0 = std::sqrt(1.054571817e-34 / (mass * omega0));
  CHECK(a0 == doctest::Approx(2.15578e-7).epsilon(1e-5));
  const double expected = 21.2e-6 / a0;
  const auto d = to_dimensionless(reference_trap());
  CHECK(d.w_tilde == doctest::Approx(expected).epsilon(1e-14));
  CHECK(d.w_tilde == doctest::Approx(98.34).epsilon(1e-3));
  CHECK(d.tau_per_second == doctest::Approx(omega0).epsilon(1e-15));
}

TEST_CASE("non-positive fields are rejected by name") {
  for (const char* field : {"omega0", "omega_f", "waist", "mass"}) {
    TrapSpec spec = reference_trap();
    if (std::string(field) == "omega0") spec.omega0 = 0.0;
    if (std::string(field) == "omega_f") spec.omega_f = -1.0;
    if (std::string(field) == "waist") spec.waist = 0.0;
    if (std::string(field) == "mass") spec.mass = -3.0;
    try {
      to_dimensionless(spec);
      FAIL("expected InvalidSpecError");
    } catch (const InvalidSpecError& e) {
      CHECK(e.field() == field);
    }
  }
}

TEST_CASE("time and length conversions round-trip") {
  const auto spec = reference_trap();
  for (double t : {1e-6, 5e-4, 0.37, 12.0}) {
    CHECK(tau_to_seconds(spec, seconds_to_tau(spec, t)) == doctest::Approx(t).epsilon(1e-14));
  }
  for (double x : {1e-9, 2.12e-5, 3e-3}) {
    CHECK(length_to_metres(spec, metres_to_length(spec, x)) == doctest::Approx(x).epsilon(1e-14));
  }
}

TEST_CASE("gamma is invariant under a common frequency rescaling") {
  const auto spec = reference_trap();
  for (double c : {0.1, 3.0, 1e3}) {
    TrapSpec scaled = spec;
    scaled.omega0 *= c;
    scaled.omega_f *= c;
    CHECK(scaled.gamma() == doctest::Approx(spec.gamma()).epsilon(1e-14));
  }
}

TEST_CASE("control bound requires delta gamma^4 > 1") {
  CHECK_NOTHROW(ControlBound{1.0}.validate(10.0));
  CHECK_NOTHROW(ControlBound{0.5}.validate(2.0));
  CHECK_THROWS_AS(ControlBound{1.0}.validate(1.0), InfeasibleError);
  CHECK_THROWS_AS(ControlBound{-1.0}.validate(10.0), InfeasibleError);
  CHECK_THROWS_AS(ControlBound{1e-4}.validate(10.0), InfeasibleError);
}
