#include "hhg/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <string>

#include "hhg/errors.hpp"

namespace hhg {

namespace {

SweepResult prepare(const BandStructure& bs, double dt, int nsteps) {
  SweepResult r;
  r.dt = dt;
  r.nsteps = nsteps;
  r.jk.resize(static_cast<std::size_t>(bs.grid.size()));
  r.diag_k.resize(static_cast<std::size_t>(bs.grid.size()));
  return r;
}

void finish(SweepResult& r) {
  for (const PropagationDiagnostics& d : r.diag_k) r.diag.merge(d);
}

void run_row(const BandStructure& bs, const PulseParams& pulse, const RelaxationRates& rates,
             double dt, int nsteps, int ik, SweepResult& r) {
  const std::size_t i = static_cast<std::size_t>(ik);
  const Eigen::VectorXd e = bs.energies[i].segment(bs.n0, bs.n_window);
  r.jk[i] = propagate_current_k(e, bs.momentum[i], rates, pulse, dt, nsteps, &r.diag_k[i]);
}

}  // namespace

SweepResult sweep_serial(const BandStructure& bs, const PulseParams& pulse,
                         const RelaxationRates& rates, double dt, int nsteps) {
  SweepResult r = prepare(bs, dt, nsteps);
  for (int ik = 0; ik < bs.grid.size(); ++ik) {
    run_row(bs, pulse, rates, dt, nsteps, ik, r);
  }
  finish(r);
  return r;
}

SweepResult sweep_parallel(const BandStructure& bs, const PulseParams& pulse,
                           const RelaxationRates& rates, double dt, int nsteps, int n_threads) {
#ifdef _OPENMP
  if (n_threads != 1) {
    SweepResult r = prepare(bs, dt, nsteps);
    const int nk = bs.grid.size();
    std::string first_error;
#pragma omp parallel for schedule(static) num_threads(n_threads > 0 ? n_threads : omp_get_max_threads())
    for (int ik = 0; ik < nk; ++ik) {
      try {
        run_row(bs, pulse, rates, dt, nsteps, ik, r);
      } catch (const std::exception& ex) {
#pragma omp critical
        if (first_error.empty()) first_error = ex.what();
      }
    }
    if (!first_error.empty()) throw NumericalError(first_error);
    finish(r);
    return r;
  }
#else
  (void)n_threads;
#endif
  return sweep_serial(bs, pulse, rates, dt, nsteps);
}

std::vector<double> net_current(const SweepResult& sweep, const std::vector<int>& rows,
                                int n_k_full) {
  if (n_k_full < 1) throw ConfigError("net_current: full grid size must be positive");
  std::vector<double> j(static_cast<std::size_t>(sweep.nsteps) + 1, 0.0);
  for (int ik : rows) {
    if (ik < 0 || ik >= static_cast<int>(sweep.jk.size())) {
      throw ConfigError("net_current: row index " + std::to_string(ik) + " out of range");
    }
    const std::vector<double>& row = sweep.jk[static_cast<std::size_t>(ik)];
    for (std::size_t i = 0; i < j.size(); ++i) j[i] += row[i];
  }
  const double w = 1.0 / static_cast<double>(n_k_full);
  for (double& v : j) v *= w;
  return j;
}

}  // namespace hhg
