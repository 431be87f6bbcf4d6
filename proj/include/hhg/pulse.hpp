#pragma once

namespace hhg {

// sin^2-envelope vector potential, nonzero only on [0, tau]:
// A(t) = A0 sin^2(pi t / tau) sin(omega_L t + phi).
// The electric field is the exact derivative F(t) = -dA/dt.
struct PulseParams {
  double a0 = 0;       // vector-potential amplitude, a.u.
  double omega_l = 0;  // carrier angular frequency, a.u.
  double tau = 0;      // total duration, a.u.
  double phi = 0;      // carrier-envelope phase, rad

  double cycle() const;  // 2 pi / omega_l

  // A0 = F0 / omega_L; wavelength sets omega_L = 2 pi c / lambda.
  static PulseParams from_field(double f0, double lambda, double tau, double phi);
  static PulseParams from_a0(double a0, double lambda, double tau, double phi);

  void validate() const;
};

double vector_potential(const PulseParams& p, double t);
double electric_field(const PulseParams& p, double t);

}  // namespace hhg
