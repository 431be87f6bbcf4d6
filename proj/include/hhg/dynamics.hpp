#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "hhg/pulse.hpp"

namespace hhg {

struct RelaxationRates {
  double gamma_d = 0;   // diagonal, pulls populations back to the valence band, a.u.
  double gamma_od = 0;  // off-diagonal decay, a.u.

  void validate() const;
};

struct PropagationDiagnostics {
  double max_trace_dev = 0;      // max over time of |Tr rho - 1|
  double max_herm_ratio = 0;     // max over time of max|rho - rho^dag| / max|rho|
  double max_imag_current = 0;   // max over time of |Im Tr(rho P)|
  double max_abs_current = 0;    // max over time of |j_k(t)|

  void merge(const PropagationDiagnostics& o);
};

using SnapshotFn = std::function<void(int step, double t, const Eigen::MatrixXcd& rho)>;
using FieldFn = std::function<double(double)>;  // vector potential A(t)

// Right-hand side of the k-diagonal von Neumann equation in the band window:
// drho/dt = -i [diag(e) - a_t P, rho] + R(rho), where R damps off-diagonals at
// gamma_od and relaxes populations toward the valence projector (window row 0)
// at gamma_d. The A^2 term is proportional to the identity and is dropped.
Eigen::MatrixXcd dynamics_rhs(const Eigen::MatrixXcd& rho, const Eigen::VectorXd& e,
                              const Eigen::MatrixXcd& p, double a_t, const RelaxationRates& rates);

// Fixed-step RK4 propagation from the valence projector, recording the per-k
// current j(t_i) = Re Tr(rho P) - A(t_i) Re Tr(rho) at every step, i = 0..nsteps.
// Throws NumericalError if the trace drifts beyond 1e-6 (step size too large).
std::vector<double> propagate_current_k(const Eigen::VectorXd& e, const Eigen::MatrixXcd& p,
                                        const RelaxationRates& rates, const FieldFn& a_of_t,
                                        double dt, int nsteps,
                                        PropagationDiagnostics* diag = nullptr,
                                        const SnapshotFn* snapshot = nullptr);

std::vector<double> propagate_current_k(const Eigen::VectorXd& e, const Eigen::MatrixXcd& p,
                                        const RelaxationRates& rates, const PulseParams& pulse,
                                        double dt, int nsteps,
                                        PropagationDiagnostics* diag = nullptr,
                                        const SnapshotFn* snapshot = nullptr);

}  // namespace hhg
