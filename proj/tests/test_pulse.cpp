#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hhg/errors.hpp"
#include "hhg/pulse.hpp"
#include "hhg/units.hpp"

using namespace hhg;

namespace {

PulseParams default_like_pulse(double phi = 0.0) {
  return PulseParams::from_field(units::gvm_to_au(0.5), units::um_to_bohr(3.0),
                                 units::fs_to_au(300.0), phi);
}

}  // namespace

TEST_CASE("carrier frequency from wavelength") {
  const PulseParams p = default_like_pulse();
  // 3 um carrier: one optical cycle is close to 10 fs.
  CHECK(units::au_to_fs(p.cycle()) == doctest::Approx(10.0069).epsilon(1e-4));
  CHECK(p.omega_l == doctest::Approx(2 * std::numbers::pi * units::kSpeedOfLightAu /
                                     units::um_to_bohr(3.0))
                         .epsilon(1e-15));
}

TEST_CASE("amplitude conversion F0 -> A0") {
  const double f0 = units::gvm_to_au(0.5);
  const PulseParams p = default_like_pulse();
  CHECK(p.a0 * p.omega_l == doctest::Approx(f0).epsilon(1e-14));
}

TEST_CASE("vector potential endpoints and support") {
  const PulseParams p = default_like_pulse(0.3);
  CHECK(vector_potential(p, 0.0) == 0.0);
  CHECK(vector_potential(p, p.tau) == 0.0);
  CHECK(vector_potential(p, -5.0) == 0.0);
  CHECK(vector_potential(p, p.tau + 5.0) == 0.0);
  CHECK(electric_field(p, -5.0) == 0.0);
  CHECK(electric_field(p, p.tau + 5.0) == 0.0);
  // Midpoint: envelope is exactly 1.
  const double want = p.a0 * std::sin(p.omega_l * p.tau / 2 + p.phi);
  CHECK(vector_potential(p, p.tau / 2) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("field is the exact derivative of the vector potential") {
  const PulseParams p = default_like_pulse(0.7);
  for (const double frac : {0.083, 0.25, 0.4999, 0.618, 0.955}) {
    const double t = frac * p.tau;
    const double h = 0.05;  // a.u.; 4th-order stencil
    const double d_fd = (vector_potential(p, t - 2 * h) - 8 * vector_potential(p, t - h) +
                         8 * vector_potential(p, t + h) - vector_potential(p, t + 2 * h)) /
                        (12 * h);
    CHECK(electric_field(p, t) == doctest::Approx(-d_fd).epsilon(1e-10));
  }
}

TEST_CASE("gauge consistency: A is the accumulated field") {
  // A(t) - A(0) = -int_0^t F dt', checked with Simpson quadrature.
  const PulseParams p = PulseParams::from_field(units::gvm_to_au(2.0), units::um_to_bohr(3.0),
                                                units::fs_to_au(40.0), 0.2);
  const int n = 40000;  // even
  const double h = p.tau / n;
  double acc = 0;
  for (int i = 0; i < n; i += 2) {
    acc += (h / 3) * (electric_field(p, i * h) + 4 * electric_field(p, (i + 1) * h) +
                      electric_field(p, (i + 2) * h));
    const double t = (i + 2) * h;
    CHECK(std::abs(-acc - vector_potential(p, t)) < 1e-9 * p.a0);
  }
}

TEST_CASE("peak field approaches F0 for a many-cycle pulse") {
  const double f0 = units::gvm_to_au(0.5);
  const PulseParams p = default_like_pulse();
  double peak = 0;
  const int n = 200000;
  for (int i = 0; i <= n; ++i) peak = std::max(peak, std::abs(electric_field(p, p.tau * i / n)));
  CHECK(peak == doctest::Approx(f0).epsilon(0.01));
  CHECK(peak <= f0 * 1.01);
}

TEST_CASE("pulse validation") {
  CHECK_THROWS_AS(PulseParams::from_field(0.001, units::um_to_bohr(3.0), -1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(PulseParams::from_a0(-0.1, units::um_to_bohr(3.0), 100.0, 0.0), ConfigError);
  PulseParams p = default_like_pulse();
  p.omega_l = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
