#include "hhg/experiments.hpp"

#include <cmath>

#include "hhg/errors.hpp"
#include "hhg/units.hpp"

namespace hhg {

namespace {
constexpr double kBasisResidualLimit = 1e-6;
constexpr double kImagResidueLimit = 1e-8;
}  // namespace

Engine::Engine(const RunConfig& cfg, int n_threads) : cfg_(cfg), n_threads_(n_threads) {
  cfg_.validate();
  if (cfg_.calibrate) {
    const CalibrationResult cal = calibrate_lattice_constant(
        cfg_.potential, cfg_.n_k, cfg_.bands, cfg_.calibrate_target, cfg_.calibrate_rel_tol);
    calib_ = cal;
    cfg_.potential.a = cal.a_star;
    cfg_.bands.n0_override = cal.n0;
  }
}

const BandStructure& Engine::bands() {
  if (!bands_) {
    bands_ = solve_bands(cfg_.potential, KGrid::make(cfg_.potential.a, cfg_.n_k), cfg_.bands);
  }
  return *bands_;
}

const std::vector<std::string>& Engine::setup_warnings() {
  if (!setup_done_) {
    const BandStructure& bs = bands();
    if (bs.convergence_residual > kBasisResidualLimit) {
      setup_warnings_.push_back(
          "plane-wave basis not converged: raising bands.m_cutoff changed band energies by " +
          format_g17(bs.convergence_residual) + " ha");
    }
    setup_done_ = true;
  }
  return setup_warnings_;
}

const SweepResult& Engine::sweep_for(const RunConfig& cfg) {
  const std::uint64_t key = dynamics_fingerprint(cfg);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  double dt = 0;
  int nsteps = 0;
  cfg.resolve_time_grid(&dt, &nsteps);
  SweepResult sw = sweep_parallel(bands(), cfg.pulse(), cfg.rates, dt, nsteps, n_threads_);
  return cache_.emplace(key, std::move(sw)).first->second;
}

const SweepResult& Engine::sweep() { return sweep_for(cfg_); }

RunArtifacts Engine::reduce(const std::vector<int>& rows) {
  const SweepResult& sw = sweep();
  RunArtifacts art;
  art.rows = rows;
  art.trace.dt = sw.dt;
  art.trace.j = net_current(sw, rows, cfg_.n_k);
  art.spectrum = power_spectrum(art.trace.j, sw.dt, cfg_.pulse().omega_l, cfg_.window,
                                cfg_.pad_factor);
  art.peaks = harmonic_peaks(art.spectrum, cfg_.hmax);
  art.cutoff = cutoff_harmonic(art.peaks);
  art.warnings = setup_warnings();
  if (sw.diag.max_imag_current > kImagResidueLimit * sw.diag.max_abs_current) {
    art.warnings.push_back("imaginary residue in Tr(rho P) exceeds 1e-8 of the peak current");
  }
  return art;
}

RunArtifacts Engine::run_full() {
  SubsetSpec full;
  full.mode = SubsetSpec::Mode::FullZone;
  return reduce(full.resolve(bands().grid));
}

RunArtifacts Engine::run_subset(const SubsetSpec& subset) {
  return reduce(subset.resolve(bands().grid));
}

std::vector<BuildupRow> Engine::buildup() {
  std::vector<BuildupRow> rows;
  for (double f : cfg_.buildup_fractions) {
    SubsetSpec spec;
    spec.mode = SubsetSpec::Mode::SymmetricInterval;
    spec.fraction = f;
    RunArtifacts art = reduce(spec.resolve(bands().grid));
    BuildupRow row;
    row.fraction = f;
    row.rows_included = static_cast<int>(art.rows.size());
    row.cutoff = art.cutoff;
    row.reach = support_reach(art.peaks);
    row.peaks = std::move(art.peaks);
    row.physical = row.rows_included == cfg_.n_k;
    rows.push_back(std::move(row));
  }
  return rows;
}

ScanResult Engine::amplitude_scan() {
  ScanResult result;
  SubsetSpec full;
  full.mode = SubsetSpec::Mode::FullZone;
  const std::vector<int> all_rows = full.resolve(bands().grid);

  std::vector<double> xs, ys;
  for (double f0 : cfg_.scan_f0) {
    RunConfig cfg2 = cfg_;
    cfg2.pulse_a0 = f0 / cfg_.pulse().omega_l;
    const SweepResult& sw = sweep_for(cfg2);
    CurrentTrace trace;
    trace.dt = sw.dt;
    trace.j = net_current(sw, all_rows, cfg2.n_k);
    const SpectrumResult sp = power_spectrum(trace.j, sw.dt, cfg2.pulse().omega_l, cfg2.window,
                                             cfg2.pad_factor);
    const PeakTable table = harmonic_peaks(sp, cfg2.hmax);
    ScanRow row;
    row.f0 = f0;
    row.cutoff = cutoff_harmonic(table);
    row.excluded = !row.cutoff.has_value();
    if (!row.excluded) {
      xs.push_back(f0 * units::kFieldAuGvm);
      ys.push_back(static_cast<double>(*row.cutoff));
    }
    result.rows.push_back(row);
  }
  result.fit = linear_fit(xs, ys);
  return result;
}

}  // namespace hhg
