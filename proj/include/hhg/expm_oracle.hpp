#pragma once

#include <Eigen/Dense>

#include "hhg/dynamics.hpp"
#include "hhg/pulse.hpp"

namespace hhg {

// Reference propagator for the k-diagonal von Neumann dynamics: each time step
// is split into micro_per_step pieces over which the Hamiltonian is frozen at
// its midpoint value, and the exact exponential of the resulting affine
// generator (commutator, relaxation, and pump-back constant) is applied via a
// converged Taylor series. Calls back with rho after every full step.
void propagate_expm_reference(const Eigen::VectorXd& e, const Eigen::MatrixXcd& p,
                              const RelaxationRates& rates, const PulseParams& pulse, double dt,
                              int nsteps, int micro_per_step, const SnapshotFn& snapshot);

}  // namespace hhg
