#include "hhg/pulse.hpp"

#include <cmath>
#include <numbers>

#include "hhg/errors.hpp"
#include "hhg/units.hpp"

namespace hhg {

namespace {
constexpr double kPi = std::numbers::pi;
}

double PulseParams::cycle() const { return 2.0 * kPi / omega_l; }

PulseParams PulseParams::from_a0(double a0, double lambda, double tau, double phi) {
  PulseParams p;
  p.omega_l = 2.0 * kPi * units::kSpeedOfLightAu / lambda;
  p.a0 = a0;
  p.tau = tau;
  p.phi = phi;
  p.validate();
  return p;
}

PulseParams PulseParams::from_field(double f0, double lambda, double tau, double phi) {
  const double omega = 2.0 * kPi * units::kSpeedOfLightAu / lambda;
  return from_a0(f0 / omega, lambda, tau, phi);
}

void PulseParams::validate() const {
  if (!std::isfinite(a0) || a0 < 0) throw ConfigError("pulse: amplitude must be finite and >= 0");
  if (!(omega_l > 0) || !std::isfinite(omega_l)) throw ConfigError("pulse: wavelength must be positive");
  if (!(tau > 0) || !std::isfinite(tau)) throw ConfigError("pulse.tau must be positive");
  if (!std::isfinite(phi)) throw ConfigError("pulse.phi must be finite");
}

double vector_potential(const PulseParams& p, double t) {
  if (t <= 0.0 || t >= p.tau) return 0.0;
  const double env = std::sin(kPi * t / p.tau);
  return p.a0 * env * env * std::sin(p.omega_l * t + p.phi);
}

double electric_field(const PulseParams& p, double t) {
  if (t <= 0.0 || t >= p.tau) return 0.0;
  const double u = kPi * t / p.tau;
  const double env = std::sin(u);
  const double denv = 2.0 * env * std::cos(u) * kPi / p.tau;
  const double carrier = std::sin(p.omega_l * t + p.phi);
  const double dcarrier = p.omega_l * std::cos(p.omega_l * t + p.phi);
  return -(p.a0 * (denv * carrier + env * env * dcarrier));
}

}  // namespace hhg
