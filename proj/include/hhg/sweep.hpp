#pragma once

#include <vector>

#include "hhg/bands.hpp"
#include "hhg/dynamics.hpp"
#include "hhg/pulse.hpp"

namespace hhg {

// Per-k current trajectories over the whole grid. Rows are indexed like the
// k grid; every row is produced by the same propagation routine, so the serial
// and parallel sweeps agree bitwise.
struct SweepResult {
  double dt = 0;
  int nsteps = 0;
  std::vector<std::vector<double>> jk;  // [ik][0..nsteps]
  std::vector<PropagationDiagnostics> diag_k;
  PropagationDiagnostics diag;          // merged over k, ascending order
};

SweepResult sweep_serial(const BandStructure& bs, const PulseParams& pulse,
                         const RelaxationRates& rates, double dt, int nsteps);

// OpenMP across k; each iteration owns its row. Falls back to the serial path
// when built without OpenMP or when n_threads == 1.
SweepResult sweep_parallel(const BandStructure& bs, const PulseParams& pulse,
                           const RelaxationRates& rates, double dt, int nsteps, int n_threads);

// Net current over a subset of rows: J(t) = (1/n_k_full) sum_i j_i(t), summed
// in ascending row order. n_k_full is always the full-grid count, so subset
// currents are directly comparable to the full zone.
std::vector<double> net_current(const SweepResult& sweep, const std::vector<int>& rows,
                                int n_k_full);

}  // namespace hhg
