#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hhg/config.hpp"
#include "hhg/sweep.hpp"

namespace hhg {

struct RunArtifacts {
  CurrentTrace trace;
  SpectrumResult spectrum;
  PeakTable peaks;
  std::optional<int> cutoff;
  std::vector<int> rows;  // grid rows included in the reduction
  std::vector<std::string> warnings;
};

struct BuildupRow {
  double fraction = 0;
  int rows_included = 0;
  std::optional<int> cutoff;
  int reach = 0;  // largest resolvable odd harmonic
  PeakTable peaks;
  bool physical = false;  // marks the full-zone row, the measurable spectrum
};

struct ScanRow {
  double f0 = 0;  // a.u.
  std::optional<int> cutoff;
  bool excluded = false;  // true when the cutoff is undefined at this field
};

struct ScanResult {
  std::vector<ScanRow> rows;
  LinearFit fit;  // cutoff vs F0 in GV/m over the non-excluded rows
};

// Owns the band solution and a cache of per-k trajectory sweeps keyed by the
// dynamics fingerprint, so experiments that revisit a configuration (buildup
// fractions, repeated subsets) reuse identical trajectories.
class Engine {
 public:
  explicit Engine(const RunConfig& cfg, int n_threads = 1);

  const RunConfig& config() const { return cfg_; }
  const std::optional<CalibrationResult>& calibration() const { return calib_; }
  const BandStructure& bands();
  const SweepResult& sweep();  // full-grid sweep for the configured pulse
  const std::vector<std::string>& setup_warnings();

  RunArtifacts reduce(const std::vector<int>& rows);
  RunArtifacts run_full();
  RunArtifacts run_subset(const SubsetSpec& subset);
  std::vector<BuildupRow> buildup();
  ScanResult amplitude_scan();

 private:
  const SweepResult& sweep_for(const RunConfig& cfg);

  RunConfig cfg_;
  int n_threads_;
  std::optional<BandStructure> bands_;
  std::optional<CalibrationResult> calib_;
  std::vector<std::string> setup_warnings_;
  bool setup_done_ = false;
  std::map<std::uint64_t, SweepResult> cache_;
  std::mutex mu_;
};

}  // namespace hhg
