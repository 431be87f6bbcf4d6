#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hhg/bands.hpp"
#include "hhg/config.hpp"
#include "hhg/dynamics.hpp"
#include "hhg/errors.hpp"
#include "hhg/expm_oracle.hpp"
#include "hhg/units.hpp"

using namespace hhg;

namespace {

Eigen::MatrixXcd projector4() {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = 1.0;
  return rho;
}

BandStructure default_bands(PotentialKind kind = PotentialKind::CosineWells) {
  const PotentialSpec spec =
      kind == PotentialKind::CosineWells ? PotentialSpec::cosine_defaults()
                                         : PotentialSpec::sinh_defaults();
  BandSolveOptions opt;
  opt.convergence_check = false;
  return solve_bands(spec, KGrid::make(spec.a, 101), opt);
}

}  // namespace

TEST_CASE("valence projector is stationary at zero field") {
  Eigen::VectorXd e(4);
  e << -0.2, -0.06, 0.15, 0.65;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Random(4, 4);
  p = ((p + p.adjoint()) / 2).eval();
  const RelaxationRates rates{units::per_fs_to_au(0.1), units::per_fs_to_au(0.3)};
  const Eigen::MatrixXcd rhs = dynamics_rhs(projector4(), e, p, 0.0, rates);
  CHECK(rhs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("relaxation preserves the trace") {
  Eigen::VectorXd e(4);
  e << -0.2, -0.06, 0.15, 0.65;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Random(4, 4);
  p = ((p + p.adjoint()) / 2).eval();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Random(4, 4);
  rho = ((rho * rho.adjoint()).eval());
  rho /= rho.trace().real();
  const RelaxationRates rates{0.02, 0.07};
  const Eigen::MatrixXcd rhs = dynamics_rhs(rho, e, p, 0.37, rates);
  CHECK(std::abs(rhs.trace()) < 1e-14);
}

TEST_CASE("two-level Rabi rotation, constant drive") {
  // Degenerate levels driven through a real off-diagonal momentum: the
  // Hamiltonian is proportional to sigma_x at all times, so the excited
  // population is exactly sin^2(A p01 t).
  Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
  const double p01 = 0.4;
  p(0, 1) = p01;
  p(1, 0) = p01;
  const RelaxationRates rates{0.0, 0.0};
  const double a_const = 0.125;
  const FieldFn field = [&](double) { return a_const; };
  const double dt = 0.05;
  const int nsteps = 2000;
  double worst = 0;
  SnapshotFn probe = [&](int, double t, const Eigen::MatrixXcd& rho) {
    const double want = std::pow(std::sin(a_const * p01 * t), 2);
    worst = std::max(worst, std::abs(rho(1, 1).real() - want));
  };
  propagate_current_k(e, p, rates, field, dt, nsteps, nullptr, &probe);
  CHECK(worst < 1e-8);
}

TEST_CASE("two-level rotation under the shaped pulse") {
  // Same sigma_x structure but with the real pulse A(t); the exact excited
  // population is sin^2(p01 * int_0^t A), with the integral from quadrature.
  Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
  const double p01 = 0.8;
  p(0, 1) = p01;
  p(1, 0) = p01;
  const RelaxationRates rates{0.0, 0.0};
  const PulseParams pulse = PulseParams::from_a0(0.2, units::um_to_bohr(3.0),
                                                 units::fs_to_au(15.0), 0.9);
  // Fine stepping so the RK4 and Simpson h^4 errors sit well under the bound.
  const double dt = pulse.cycle() / 16384;
  const int nsteps = static_cast<int>(std::ceil(pulse.tau / dt));

  // Simpson integral of A on the half-step lattice, accumulated per step.
  std::vector<double> theta(static_cast<std::size_t>(nsteps) + 1, 0.0);
  for (int i = 0; i < nsteps; ++i) {
    const double t0 = i * (pulse.tau / nsteps);
    const double t1 = (i + 1) * (pulse.tau / nsteps);
    const double mid = 0.5 * (t0 + t1);
    const double seg = (t1 - t0) / 6 *
                       (vector_potential(pulse, t0) + 4 * vector_potential(pulse, mid) +
                        vector_potential(pulse, t1));
    theta[static_cast<std::size_t>(i) + 1] = theta[static_cast<std::size_t>(i)] + seg;
  }
  double worst = 0;
  SnapshotFn probe = [&](int step, double, const Eigen::MatrixXcd& rho) {
    const double want = std::pow(std::sin(p01 * theta[static_cast<std::size_t>(step)]), 2);
    worst = std::max(worst, std::abs(rho(1, 1).real() - want));
  };
  propagate_current_k(e, p, rates, pulse, pulse.tau / nsteps, nsteps, nullptr, &probe);
  CHECK(worst < 1e-8);
}

TEST_CASE("off-diagonal coherences decay at gamma_od after the pulse") {
  Eigen::VectorXd e(2);
  e << 0.0, 0.21;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
  p(0, 1) = std::complex<double>(0.3, 0.1);
  p(1, 0) = std::conj(p(0, 1));
  const double god = units::per_fs_to_au(0.3);
  const RelaxationRates rates{units::per_fs_to_au(0.1), god};
  const PulseParams pulse = PulseParams::from_field(units::gvm_to_au(2.0), units::um_to_bohr(3.0),
                                                    units::fs_to_au(10.0), 0.0);
  const double dt = 0.1;
  const double t_total = units::fs_to_au(22.0);
  const int nsteps = static_cast<int>(std::ceil(t_total / dt));
  const int s1 = static_cast<int>(units::fs_to_au(12.0) / dt);
  const int s2 = static_cast<int>(units::fs_to_au(20.0) / dt);
  std::complex<double> r1 = 0, r2 = 0;
  SnapshotFn probe = [&](int step, double, const Eigen::MatrixXcd& rho) {
    if (step == s1) r1 = rho(0, 1);
    if (step == s2) r2 = rho(0, 1);
  };
  propagate_current_k(e, p, rates, pulse, dt, nsteps, nullptr, &probe);
  REQUIRE(std::abs(r1) > 1e-12);
  const double want = std::exp(-god * (s2 - s1) * dt);
  CHECK(std::abs(r2) / std::abs(r1) == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("strong off-diagonal damping suppresses coherences") {
  Eigen::VectorXd e(2);
  e << 0.0, 0.21;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
  p(0, 1) = 0.5;
  p(1, 0) = 0.5;
  const PulseParams pulse =
      PulseParams::from_a0(1e-6, units::um_to_bohr(3.0), units::fs_to_au(10.0), 0.0);
  const double dt = 0.02;  // keeps gamma_od * dt inside the RK4 stability region
  const int nsteps = static_cast<int>(std::ceil(pulse.tau / dt));
  auto max_offdiag = [&](double god) {
    double worst = 0;
    SnapshotFn probe = [&](int, double, const Eigen::MatrixXcd& rho) {
      worst = std::max(worst, std::abs(rho(0, 1)));
    };
    const RelaxationRates rates{0.0, god};
    propagate_current_k(e, p, rates, pulse, pulse.tau / nsteps, nsteps, nullptr, &probe);
    return worst;
  };
  const double weak = max_offdiag(0.01);
  const double strong = max_offdiag(50.0);
  CHECK(strong < weak / 100);

  // With no field at all nothing ever builds a coherence.
  const FieldFn zero = [](double) { return 0.0; };
  double worst = 0;
  SnapshotFn probe = [&](int, double, const Eigen::MatrixXcd& rho) {
    worst = std::max(worst, std::abs(rho(0, 1)));
  };
  const RelaxationRates rates{0.0, 20.0};
  propagate_current_k(e, p, rates, zero, 0.05, 400, nullptr, &probe);
  CHECK(worst < 1e-12);
}

TEST_CASE("invariants on a realistic band window") {
  const BandStructure bs = default_bands();
  const int ik = 80;
  const PulseParams pulse = PulseParams::from_field(units::gvm_to_au(0.5), units::um_to_bohr(3.0),
                                                    units::fs_to_au(40.0), 0.0);
  const double dt = pulse.cycle() / 512;
  const int nsteps = static_cast<int>(std::ceil(pulse.tau / dt));
  PropagationDiagnostics diag;
  const Eigen::VectorXd e = bs.energies[ik].segment(bs.n0, bs.n_window);
  propagate_current_k(e, bs.momentum[ik], {units::per_fs_to_au(0.1), units::per_fs_to_au(0.3)},
                      pulse, pulse.tau / nsteps, nsteps, &diag);
  CHECK(diag.max_trace_dev < 1e-8);
  CHECK(diag.max_herm_ratio < 1e-10);
  CHECK(diag.max_abs_current > 0);
}

TEST_CASE("oversized steps raise a numerical error") {
  const BandStructure bs = default_bands();
  const int ik = 80;
  const PulseParams pulse = PulseParams::from_field(units::gvm_to_au(4.0), units::um_to_bohr(3.0),
                                                    units::fs_to_au(300.0), 0.0);
  const Eigen::VectorXd e = bs.energies[ik].segment(bs.n0, bs.n_window);
  bool threw = false;
  try {
    propagate_current_k(e, bs.momentum[ik], {units::per_fs_to_au(0.1), units::per_fs_to_au(0.3)},
                        pulse, 200.0, 60, nullptr);
  } catch (const NumericalError& ex) {
    threw = true;
    CHECK(std::string(ex.what()).find("trace") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("frozen density matrix at the end of the default pulse") {
  const RunConfig cfg = default_config();
  double dt = 0;
  int nsteps = 0;
  cfg.resolve_time_grid(&dt, &nsteps);
  CHECK(nsteps == 15350);
  CHECK(dt == doctest::Approx(0.8079747231631683).epsilon(1e-14));

  const BandStructure bs = default_bands();
  const int ik = 80;
  CHECK(bs.grid.k[ik] * bs.grid.a / std::numbers::pi == doctest::Approx(0.6).epsilon(1e-12));
  Eigen::MatrixXcd rho_end;
  SnapshotFn keep = [&](int step, double, const Eigen::MatrixXcd& rho) {
    if (step == nsteps) rho_end = rho;
  };
  const Eigen::VectorXd e = bs.energies[ik].segment(bs.n0, bs.n_window);
  propagate_current_k(e, bs.momentum[ik], cfg.rates, cfg.pulse(), dt, nsteps, nullptr, &keep);

  const double want_diag[4] = {0.9999135083463324, 8.486795141499256e-05, 9.65176424642232e-07,
                               6.5852582890767e-07};
  for (int n = 0; n < 4; ++n) {
    CHECK(std::abs(rho_end(n, n).real() - want_diag[n]) < 1e-10 + 1e-8 * want_diag[n]);
    CHECK(std::abs(rho_end(n, n).imag()) < 1e-14);
  }
  const std::complex<double> want01(9.851113563792464e-08, 3.1744625985730027e-07);
  CHECK(std::abs(rho_end(0, 1) - want01) < 1e-10 + 1e-8 * std::abs(want01));
  CHECK(std::abs(rho_end.trace().real() - 1.0) < 1e-10);
  CHECK((rho_end - rho_end.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("propagator matches the exponential reference on a short pulse") {
  const BandStructure bs = default_bands(PotentialKind::SinhWells);
  const int ik = 71;
  const PulseParams pulse = PulseParams::from_field(units::gvm_to_au(2.0), units::um_to_bohr(3.0),
                                                    units::fs_to_au(20.0), 0.3);
  // At this drive strength the RK4 error at 512 steps per cycle is ~1e-6;
  // quadrupling the rate brings it two orders under the oracle bound.
  const double dt_nom = pulse.cycle() / 2048;
  const int nsteps = static_cast<int>(std::ceil(pulse.tau / dt_nom));
  const double dt = pulse.tau / nsteps;
  const RelaxationRates rates{units::per_fs_to_au(0.1), units::per_fs_to_au(0.3)};
  const Eigen::VectorXd e = bs.energies[ik].segment(bs.n0, bs.n_window);

  std::vector<Eigen::MatrixXcd> traj(static_cast<std::size_t>(nsteps) + 1);
  SnapshotFn keep = [&](int step, double, const Eigen::MatrixXcd& rho) {
    traj[static_cast<std::size_t>(step)] = rho;
  };
  propagate_current_k(e, bs.momentum[ik], rates, pulse, dt, nsteps, nullptr, &keep);

  double worst = 0;
  SnapshotFn compare = [&](int step, double, const Eigen::MatrixXcd& rho) {
    worst = std::max(worst, (rho - traj[static_cast<std::size_t>(step)]).cwiseAbs().maxCoeff());
  };
  propagate_expm_reference(e, bs.momentum[ik], rates, pulse, dt, nsteps, 100, compare);
  CHECK(worst < 1e-7);
}

TEST_CASE("halving the step changes the current below 1e-6") {
  const BandStructure bs = default_bands();
  const int ik = 66;
  const PulseParams pulse = PulseParams::from_field(units::gvm_to_au(2.0), units::um_to_bohr(3.0),
                                                    units::fs_to_au(30.0), 0.0);
  const double dt_nom = pulse.cycle() / 512;
  const int n1 = static_cast<int>(std::ceil(pulse.tau / dt_nom));
  const RelaxationRates rates{units::per_fs_to_au(0.1), units::per_fs_to_au(0.3)};
  const Eigen::VectorXd e = bs.energies[ik].segment(bs.n0, bs.n_window);
  const std::vector<double> j1 =
      propagate_current_k(e, bs.momentum[ik], rates, pulse, pulse.tau / n1, n1);
  const std::vector<double> j2 =
      propagate_current_k(e, bs.momentum[ik], rates, pulse, pulse.tau / (2 * n1), 2 * n1);
  double worst = 0;
  for (std::size_t i = 0; i < j1.size(); ++i) {
    worst = std::max(worst, std::abs(j1[i] - j2[2 * i]));
  }
  double scale = 0;
  for (const double v : j1) scale = std::max(scale, std::abs(v));
  CHECK(worst < 1e-6 * std::max(1.0, scale));
  CHECK(worst < 1e-6);
}
