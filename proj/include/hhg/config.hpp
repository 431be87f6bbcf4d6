#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hhg/bands.hpp"
#include "hhg/dynamics.hpp"
#include "hhg/observables.hpp"
#include "hhg/potential.hpp"
#include "hhg/pulse.hpp"

namespace hhg {

struct SubsetSpec {
  enum class Mode { SingleK, PairPM, SymmetricInterval, FullZone, ExplicitList };
  Mode mode = Mode::FullZone;
  int k_index = -1;  // grid row for SingleK / PairPM
  double k_fraction = std::numeric_limits<double>::quiet_NaN();  // k as a fraction of pi/a
  double fraction = 1.0;     // half-width fraction for SymmetricInterval
  std::vector<int> indices;  // for ExplicitList

  // Grid rows covered by this subset, ascending. Throws ConfigError for
  // out-of-range rows, a requested k that is not a grid point, or a +-k pair
  // at k = 0.
  std::vector<int> resolve(const KGrid& grid) const;
};

// Exact-match lookup of a grid row by k/( pi/a ); throws ConfigError when the
// requested value is off the grid.
int grid_index_for_fraction(const KGrid& grid, double frac);

// Fully resolved run parameters, all in atomic units.
struct RunConfig {
  PotentialSpec potential = PotentialSpec::cosine_defaults();
  int n_k = 101;
  BandSolveOptions bands;
  bool calibrate = false;
  double calibrate_target = 0.11758547322429928;  // 3.2 eV
  double calibrate_rel_tol = 0.005;

  double pulse_a0 = 0;      // set by default_config from F0 = 0.5 GV/m
  double pulse_lambda = 0;  // bohr
  double pulse_tau = 0;
  double pulse_phi = 0;

  RelaxationRates rates;
  int steps_per_cycle = 512;
  double dt_override = 0;  // 0 derives dt from steps_per_cycle
  double tail = 0;

  SpectrumWindow window = SpectrumWindow::Hann;
  int pad_factor = 4;
  int hmax = 40;

  SubsetSpec subset;
  std::vector<double> buildup_fractions;
  std::vector<double> scan_f0;  // peak fields, a.u.
  bool per_k_dump = false;

  PulseParams pulse() const;
  void resolve_time_grid(double* dt, int* nsteps) const;
  void validate() const;
};

RunConfig default_config();

// Key-value file with [section] headers and unit-suffixed values, or a JSON
// object of sections when the file starts with '{'. Unknown keys are rejected
// with their full path. An empty file yields default_config().
RunConfig load_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin,
                            const std::vector<std::string>& overrides);

// Applies "section.key=value" overrides on top of a parsed file.
RunConfig load_config(const std::string& path_or_empty, const std::vector<std::string>& overrides);

// Deterministic flat serialization of the resolved config ("section.key=value"
// lines, atomic units, %.17g). Basis of the fingerprints and the manifest echo.
std::vector<std::pair<std::string, std::string>> canonical_items(const RunConfig& cfg);

// FNV-1a over the canonical items, excluding the output section.
std::uint64_t config_fingerprint(const RunConfig& cfg);

// Fingerprint of the sections that determine per-k trajectories (potential,
// grid, bands window, pulse, dynamics); keys the trajectory cache.
std::uint64_t dynamics_fingerprint(const RunConfig& cfg);

std::string fingerprint_hex(std::uint64_t fp);
std::string format_g17(double v);

}  // namespace hhg
