#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hhg/experiments.hpp"
#include "hhg/units.hpp"

using namespace hhg;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool close_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::abs(want);
}

RunConfig light_config() {
  RunConfig cfg = default_config();
  cfg.n_k = 41;
  cfg.pulse_tau = units::fs_to_au(60.0);
  return cfg;
}

}  // namespace

TEST_CASE("full-zone run reproduces the frozen spectrum, cosine wells") {
  Engine eng(default_config(), 1);
  const RunArtifacts art = eng.run_full();
  REQUIRE(art.rows.size() == 101);
  CHECK(art.warnings.empty());

  CHECK(close_rel(max_abs(art.trace.j), 0.0066930600693393995, 1e-9));
  CHECK(close_rel(art.peaks.global_max_om, 1.0000407932196846, 1e-9));

  struct Anchor {
    int h;
    double s;
    double rel;
  };
  const Anchor anchors[] = {{1, 217.58273924873404, 1e-6},
                            {2, 4.356497873072994e-11, 1e-3},
                            {3, 0.010928756585745335, 1e-6},
                            {4, 7.133473092351164e-18, 5e-2},
                            {5, 1.4042056259064716e-06, 1e-6},
                            {7, 4.784890384205004e-10, 1e-4},
                            {9, 1.173963504192813e-10, 1e-4},
                            {11, 2.0950660234076504e-13, 1e-3}};
  for (const Anchor& a : anchors) {
    REQUIRE(art.peaks.at(a.h) != nullptr);
    CHECK_MESSAGE(close_rel(art.peaks.at(a.h)->s_peak, a.s, a.rel), "harmonic ", a.h);
  }
  // At this weak field the plateau collapses right after h = 3.
  REQUIRE(art.cutoff.has_value());
  CHECK(*art.cutoff == 3);
  CHECK(resolvable_odd_count(art.peaks) >= 5);
}

TEST_CASE("full-zone run reproduces the frozen spectrum, sinh wells") {
  RunConfig cfg = default_config();
  cfg.potential = PotentialSpec::sinh_defaults();
  Engine eng(cfg, 1);
  const RunArtifacts art = eng.run_full();
  CHECK(eng.bands().n0 == 6);

  struct Anchor {
    int h;
    double s;
    double rel;
  };
  const Anchor anchors[] = {{1, 218838.15994384626, 1e-6},
                            {2, 9.339177751908681e-08, 1e-3},
                            {3, 3.6299193344246508, 1e-6},
                            {5, 0.002228297829248308, 1e-6},
                            {7, 7.922363504829263e-06, 1e-4}};
  for (const Anchor& a : anchors) {
    REQUIRE(art.peaks.at(a.h) != nullptr);
    CHECK_MESSAGE(close_rel(art.peaks.at(a.h)->s_peak, a.s, a.rel), "harmonic ", a.h);
  }
}

TEST_CASE("buildup: support grows with the k interval and ends at the full zone") {
  Engine eng(default_config(), 1);
  const std::vector<BuildupRow> rows = eng.buildup();
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rows_included == 21);
  CHECK(rows[1].rows_included == 41);
  CHECK(rows[4].rows_included == 101);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i].reach <= rows[i + 1].reach);
    CHECK(!rows[i].physical);
  }
  CHECK(rows[4].physical);
  CHECK(rows[0].reach >= 3);

  // The 100% row travels the same reduction path as the standalone full run.
  const RunArtifacts full = eng.run_full();
  CHECK(rows[4].cutoff == full.cutoff);
  CHECK(rows[4].reach == support_reach(full.peaks));
  REQUIRE(rows[4].peaks.peaks.size() == full.peaks.peaks.size());
  for (std::size_t i = 0; i < full.peaks.peaks.size(); ++i) {
    CHECK(rows[4].peaks.peaks[i].s_peak == full.peaks.peaks[i].s_peak);
  }
  CHECK(rows[4].peaks.floor_median == full.peaks.floor_median);
}

TEST_CASE("trajectory cache: rerun is bitwise identical, fresh engine too") {
  const RunConfig cfg = light_config();
  Engine eng(cfg, 1);
  const RunArtifacts a = eng.run_full();
  const RunArtifacts b = eng.run_full();
  CHECK(a.trace.j == b.trace.j);
  CHECK(a.spectrum.s == b.spectrum.s);

  Engine eng2(cfg, 1);
  const RunArtifacts c = eng2.run_full();
  CHECK(a.trace.j == c.trace.j);

  RunConfig mod = cfg;
  mod.rates.gamma_od = units::per_fs_to_au(0.5);
  Engine eng3(mod, 1);
  const RunArtifacts d = eng3.run_full();
  CHECK(a.trace.j != d.trace.j);
}

TEST_CASE("subsets reduce over the selected rows only") {
  const RunConfig cfg = light_config();
  Engine eng(cfg, 1);

  SubsetSpec single;
  single.mode = SubsetSpec::Mode::SingleK;
  single.k_fraction = 0.6;
  const RunArtifacts one = eng.run_subset(single);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0] == 32);

  SubsetSpec pair;
  pair.mode = SubsetSpec::Mode::PairPM;
  pair.k_fraction = 0.6;
  const RunArtifacts two = eng.run_subset(pair);
  REQUIRE(two.rows.size() == 2);
  CHECK(two.rows == std::vector<int>{8, 32});

  // Net current normalization stays 1/n_k, so subset currents add up.
  const SweepResult& sw = eng.sweep();
  const std::vector<double> direct = net_current(sw, {8, 32}, cfg.n_k);
  CHECK(two.trace.j == direct);
}

TEST_CASE("amplitude scan over moderate fields fits defined cutoffs") {
  RunConfig cfg = light_config();
  cfg.scan_f0 = {units::gvm_to_au(2.0), units::gvm_to_au(3.0), units::gvm_to_au(4.0)};
  Engine eng(cfg, 1);
  const ScanResult scan = eng.amplitude_scan();
  REQUIRE(scan.rows.size() == 3);
  int defined = 0;
  for (const ScanRow& row : scan.rows) {
    CHECK(row.excluded == !row.cutoff.has_value());
    defined += row.cutoff.has_value() ? 1 : 0;
  }
  CHECK(defined >= 2);
  CHECK(std::isfinite(scan.fit.slope));

  // Repeating the scan hits the cache and reproduces every row.
  const ScanResult again = eng.amplitude_scan();
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    CHECK(scan.rows[i].cutoff == again.rows[i].cutoff);
  }
  CHECK(scan.fit.slope == again.fit.slope);
}

TEST_CASE("amplitude scan: undefined cutoffs are excluded from the fit") {
  RunConfig cfg = light_config();
  // With only one odd order above the fundamental in the table, the cutoff
  // gate can never collect its three plateau peaks, so every row comes back
  // undefined no matter how strong the field is.
  cfg.hmax = 3;
  cfg.scan_f0 = {units::gvm_to_au(2.0), units::gvm_to_au(3.0)};
  Engine eng(cfg, 1);
  const ScanResult scan = eng.amplitude_scan();
  REQUIRE(scan.rows.size() == 2);
  for (const ScanRow& row : scan.rows) {
    CHECK(!row.cutoff.has_value());
    CHECK(row.excluded);
  }
  // No points reach the fit, which stays at its written defaults.
  CHECK(!scan.fit.r2_defined);
  CHECK(scan.fit.slope == 0.0);
  CHECK(scan.fit.intercept == 0.0);
}

TEST_CASE("calibration adjusts the lattice constant inside the engine") {
  RunConfig cfg = default_config();
  cfg.calibrate = true;
  Engine eng(cfg, 1);
  REQUIRE(eng.calibration().has_value());
  const CalibrationResult& cal = *eng.calibration();
  CHECK(eng.config().potential.a == cal.a_star);
  CHECK(eng.config().bands.n0_override == 0);
  CHECK(units::bohr_to_angstrom(cal.a_star) == doctest::Approx(5.22227).epsilon(5e-3));
  CHECK(std::abs(units::ha_to_ev(cal.gap) - 3.2) <= 0.005 * 3.2 + 1e-12);
  CHECK(units::ha_to_ev(eng.bands().gap_value) == doctest::Approx(units::ha_to_ev(cal.gap)));
}

TEST_CASE("an unconverged basis raises a setup warning") {
  RunConfig cfg = light_config();
  cfg.potential = PotentialSpec::sinh_defaults();
  cfg.bands.m_cutoff = 32;
  cfg.bands.n0_override = 6;
  Engine eng(cfg, 1);
  const std::vector<std::string>& warnings = eng.setup_warnings();
  REQUIRE(!warnings.empty());
  CHECK(warnings[0].find("basis") != std::string::npos);

  // Warnings propagate into run artifacts.
  const RunArtifacts art = eng.run_full();
  CHECK(!art.warnings.empty());
}
