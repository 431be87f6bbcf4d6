#include "hhg/expm_oracle.hpp"

#include <complex>

#include "hhg/errors.hpp"

namespace hhg {

namespace {
using cplx = std::complex<double>;

// Linear part of the generator (the full right-hand side minus its constant
// pump-back term), evaluated at fixed vector potential a_t.
Eigen::MatrixXcd linear_part(const Eigen::MatrixXcd& x, const Eigen::VectorXd& e,
                             const Eigen::MatrixXcd& p, double a_t, const RelaxationRates& rates) {
  Eigen::MatrixXcd out = dynamics_rhs(x, e, p, a_t, rates);
  out(0, 0) -= rates.gamma_d;
  return out;
}

}  // namespace

void propagate_expm_reference(const Eigen::VectorXd& e, const Eigen::MatrixXcd& p,
                              const RelaxationRates& rates, const PulseParams& pulse, double dt,
                              int nsteps, int micro_per_step, const SnapshotFn& snapshot) {
  if (micro_per_step < 1) throw ConfigError("expm oracle: micro_per_step must be >= 1");
  const int n = static_cast<int>(e.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  rho(0, 0) = 1.0;
  snapshot(0, 0.0, rho);

  const double delta = dt / micro_per_step;
  // exp(delta * generator) applied by Taylor series on the augmented state
  // [rho; 1]: the constant term enters only through the first-order term.
  // ||delta * L|| is tiny for any sane step, so 20 terms converge far past
  // double precision.
  constexpr int kTerms = 20;
  for (int step = 0; step < nsteps; ++step) {
    const double t0 = step * dt;
    for (int m = 0; m < micro_per_step; ++m) {
      const double a_mid = vector_potential(pulse, t0 + (m + 0.5) * delta);
      Eigen::MatrixXcd term = delta * dynamics_rhs(rho, e, p, a_mid, rates);
      Eigen::MatrixXcd sum = rho + term;
      for (int j = 2; j <= kTerms; ++j) {
        term = (delta / j) * linear_part(term, e, p, a_mid, rates);
        sum += term;
      }
      rho = sum;
    }
    snapshot(step + 1, (step + 1) * dt, rho);
  }
}

}  // namespace hhg
