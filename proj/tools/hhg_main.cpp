#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "hhg/errors.hpp"
#include "hhg/experiments.hpp"
#include "hhg/expm_oracle.hpp"
#include "hhg/fd_oracle.hpp"
#include "hhg/output.hpp"
#include "hhg/units.hpp"
#include "hhg/version.hpp"

namespace {

using namespace hhg;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;  // 0 = HHG_THREADS env or all available
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "Configuration file (key-value or JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args->out_dir, "Output directory (created if missing)");
  cmd->add_option("--threads", args->threads, "Worker threads for the k sweep");
  cmd->add_option("--set", args->overrides, "Override a config key: section.key=value")
      ->take_all();
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("HHG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // let the sweep use the OpenMP default
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

FileHeader make_header(const std::string& subcommand, const RunConfig& cfg) {
  FileHeader hdr;
  hdr.tool = "hhg";
  hdr.version = kVersion;
  hdr.subcommand = subcommand;
  hdr.config_hash = fingerprint_hex(config_fingerprint(cfg));
  return hdr;
}

nlohmann::json bands_summary(const Engine& engine, const BandStructure& bs) {
  nlohmann::json doc;
  doc["n0"] = bs.n0;
  doc["gap_ha"] = bs.gap_value;
  doc["gap_eV"] = units::ha_to_ev(bs.gap_value);
  doc["gap_k_over_kedge"] =
      bs.grid.k[static_cast<std::size_t>(bs.gap_k_index)] / (std::numbers::pi / bs.grid.a);
  doc["convergence_residual_ha"] = bs.convergence_residual;
  if (engine.calibration()) {
    const CalibrationResult& cal = *engine.calibration();
    doc["calibration"] = {{"a_star_bohr", cal.a_star},
                          {"a_star_angstrom", units::bohr_to_angstrom(cal.a_star)},
                          {"gap_ha", cal.gap},
                          {"gap_eV", units::ha_to_ev(cal.gap)},
                          {"n0", cal.n0},
                          {"iterations", cal.iterations}};
  }
  return doc;
}

nlohmann::json base_manifest(const std::string& subcommand, const RunConfig& cfg) {
  nlohmann::json doc;
  doc["tool"] = "hhg";
  doc["version"] = kVersion;
  doc["subcommand"] = subcommand;
  doc["config_hash"] = fingerprint_hex(config_fingerprint(cfg));
  doc["dynamics_hash"] = fingerprint_hex(dynamics_fingerprint(cfg));
  doc["config"] = config_to_json(cfg);
  return doc;
}

void finish_manifest(nlohmann::json& doc, const std::string& out_dir,
                     const std::vector<std::string>& warnings, const Timer& timer) {
  doc["warnings"] = warnings;
  // The two fields below are the only non-deterministic output content.
  doc["wall_ms"] = timer.ms();
  doc["written_utc"] = utc_now();
  write_json(out_dir + "/manifest.json", doc);
}

void write_run_outputs(const std::string& subcommand, const std::string& out_dir,
                       const RunConfig& cfg, Engine& engine, const RunArtifacts& art) {
  const FileHeader hdr = make_header(subcommand, cfg);
  write_bands_csv(out_dir + "/bands.csv", engine.bands(), hdr);
  write_current_csv(out_dir + "/current.csv", art.trace, hdr);
  write_spectrum_csv(out_dir + "/spectrum.csv", art.spectrum, hdr);
  nlohmann::json peaks = peaks_to_json(art.peaks, art.cutoff);
  peaks["rows_included"] = art.rows.size();
  write_json(out_dir + "/peaks.json", peaks);
  if (cfg.per_k_dump) {
    write_per_k_csv(out_dir + "/per_k.csv", engine.bands().grid, engine.sweep().dt,
                    engine.sweep().jk, art.rows, hdr);
  }
}

int run_command(const std::string& subcommand, const CommonArgs& args) {
  const Timer timer;
  RunConfig cfg = load_config(args.config_path, args.overrides);
  std::filesystem::create_directories(args.out_dir);
  Engine engine(cfg, resolve_threads(args.threads));
  // Calibration may have adjusted the lattice constant; all outputs echo the
  // effective configuration.
  const RunConfig& eff = engine.config();
  nlohmann::json manifest = base_manifest(subcommand, eff);
  std::vector<std::string> warnings;

  if (subcommand == "bands") {
    const BandStructure& bs = engine.bands();
    warnings = engine.setup_warnings();
    write_bands_csv(args.out_dir + "/bands.csv", bs, make_header(subcommand, eff));
    manifest["bands"] = bands_summary(engine, bs);
  } else if (subcommand == "run" || subcommand == "subset") {
    const RunArtifacts art =
        subcommand == "run" ? engine.run_full() : engine.run_subset(eff.subset);
    warnings = art.warnings;
    write_run_outputs(subcommand, args.out_dir, eff, engine, art);
    manifest["bands"] = bands_summary(engine, engine.bands());
    manifest["run"] = {{"n_k", eff.n_k},
                       {"rows_included", art.rows.size()},
                       {"dt_au", art.trace.dt},
                       {"nsteps", art.trace.j.size() - 1},
                       {"cutoff", art.cutoff ? nlohmann::json(*art.cutoff) : nlohmann::json(nullptr)}};
  } else if (subcommand == "buildup") {
    const std::vector<BuildupRow> rows = engine.buildup();
    const RunArtifacts full = engine.run_full();
    warnings = full.warnings;
    write_run_outputs(subcommand, args.out_dir, eff, engine, full);
    nlohmann::json table = nlohmann::json::array();
    for (const BuildupRow& row : rows) {
      nlohmann::json r;
      r["fraction"] = row.fraction;
      r["rows_included"] = row.rows_included;
      r["cutoff"] = row.cutoff ? nlohmann::json(*row.cutoff) : nlohmann::json(nullptr);
      r["support_reach"] = row.reach;
      r["physical"] = row.physical;
      if (row.physical) r["note"] = "full zone: the physical, measurable spectrum";
      table.push_back(r);
    }
    nlohmann::json peaks = peaks_to_json(full.peaks, full.cutoff);
    peaks["buildup"] = table;
    write_json(args.out_dir + "/peaks.json", peaks);
    manifest["bands"] = bands_summary(engine, engine.bands());
    manifest["buildup"] = table;
  } else if (subcommand == "scan-f0") {
    const ScanResult scan = engine.amplitude_scan();
    warnings = engine.setup_warnings();
    write_bands_csv(args.out_dir + "/bands.csv", engine.bands(), make_header(subcommand, eff));
    nlohmann::json rows = nlohmann::json::array();
    for (const ScanRow& row : scan.rows) {
      rows.push_back({{"F0_GVm", row.f0 * units::kFieldAuGvm},
                      {"F0_au", row.f0},
                      {"cutoff", row.cutoff ? nlohmann::json(*row.cutoff) : nlohmann::json(nullptr)},
                      {"excluded_from_fit", row.excluded}});
    }
    nlohmann::json doc;
    doc["scan"] = rows;
    doc["fit"] = {{"slope_per_GVm", scan.fit.slope},
                  {"intercept", scan.fit.intercept},
                  {"r2", scan.fit.r2_defined ? nlohmann::json(scan.fit.r2) : nlohmann::json(nullptr)},
                  {"r2_defined", scan.fit.r2_defined}};
    write_json(args.out_dir + "/peaks.json", doc);
    manifest["bands"] = bands_summary(engine, engine.bands());
    manifest["scan"] = doc;
    if (!scan.fit.r2_defined) warnings.push_back("cutoff fit degenerate: R^2 undefined");
  } else {
    throw ConfigError("unknown subcommand: " + subcommand);
  }

  finish_manifest(manifest, args.out_dir, warnings, timer);
  if (!warnings.empty()) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    return 4;
  }
  return 0;
}

bool check(const char* name, bool ok, std::string* detail = nullptr) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
  if (detail && !detail->empty()) std::cout << " (" << *detail << ")";
  std::cout << "\n";
  return ok;
}

// Fast internal consistency checks against closed forms and oracles.
int selftest() {
  bool all = true;
  {
    // Free-particle limit: with a vanishing-depth well the Bloch energies at
    // k = 0 are 0, 2 pi^2, 2 pi^2 for a unit cell.
    PotentialSpec s = PotentialSpec::cosine_defaults();
    s.a = 1.0;
    s.u0 = 1e-30;
    const FourierPotential fp = fourier_coefficients(s, 16);
    Eigen::VectorXd e;
    Eigen::MatrixXcd c;
    solve_single_k(fp, s.a, 0.0, 3, 8, e, c);
    const double tp = 2.0 * std::numbers::pi * std::numbers::pi;
    all &= check("free-particle plane-wave limit",
                 std::abs(e(0)) < 1e-9 && std::abs(e(1) - tp) < 1e-8 && std::abs(e(2) - tp) < 1e-8);
  }
  {
    // Closed-form Fourier coefficients against midpoint quadrature.
    for (const PotentialSpec& s :
         {PotentialSpec::cosine_defaults(), PotentialSpec::sinh_defaults()}) {
      const int mmax = 24;
      const FourierPotential fp = fourier_coefficients(s, mmax);
      const int nq = 1 << 18;  // kinks at the well partition limit midpoint error to O(h^2)
      double worst = 0;
      for (int m = -mmax; m <= mmax; ++m) {
        std::complex<double> acc = 0;
        for (int q = 0; q < nq; ++q) {
          const double x = (q + 0.5) * s.a / nq;
          acc += evaluate_potential(s, x) *
                 std::exp(std::complex<double>(0, -2.0 * std::numbers::pi * m * (q + 0.5) / nq));
        }
        acc /= nq;
        worst = std::max(worst, std::abs(acc - fp.at(m)));
      }
      all &= check(s.kind == PotentialKind::CosineWells ? "cosine well Fourier closed form"
                                                        : "sinh well Fourier closed form",
                   worst < 1e-9);
    }
  }
  {
    // Band mirror symmetry and momentum antisymmetry on a small grid.
    const PotentialSpec s = PotentialSpec::cosine_defaults();
    BandSolveOptions opt;
    opt.m_cutoff = 24;
    const BandStructure bs = solve_bands(s, KGrid::make(s.a, 21), opt);
    bool ok = true;
    for (int i = 0; i < bs.grid.size(); ++i) {
      const int j = bs.grid.mirror(i);
      ok &= (bs.energies[i] - bs.energies[j]).cwiseAbs().maxCoeff() == 0.0;
      // k = 0 is its own image and carries no antisymmetry constraint.
      if (i == bs.grid.center()) continue;
      ok &= (bs.momentum[i] + bs.momentum[j].conjugate()).cwiseAbs().maxCoeff() == 0.0;
    }
    all &= check("time-reversal mirror construction", ok);
  }
  {
    // Gauge consistency: A(t) equals the integral of -F from t to the end of
    // the pulse (A(tau) = 0), checked by fine quadrature.
    const PulseParams p = PulseParams::from_field(units::gvm_to_au(2.0),
                                                  units::um_to_bohr(3.0), units::fs_to_au(40.0), 0.4);
    const int nq = 200000;
    const double h = p.tau / nq;
    double acc = 0;
    double worst = 0;
    for (int q = nq - 1; q >= 0; --q) {
      const double tm = (q + 0.5) * h;
      acc += electric_field(p, tm) * h;
      const double a_mid = vector_potential(p, q * h);
      if (q % 1000 == 0) worst = std::max(worst, std::abs(acc - a_mid));
    }
    all &= check("pulse gauge consistency", worst < 1e-8 * p.a0 + 1e-12);
  }
  {
    // RK4 against the matrix-exponential reference on a short pulse.
    const PotentialSpec s = PotentialSpec::cosine_defaults();
    BandSolveOptions opt;
    const BandStructure bs = solve_bands(s, KGrid::make(s.a, 21), opt);
    const int ik = 15;
    const PulseParams p = PulseParams::from_field(units::gvm_to_au(2.0), units::um_to_bohr(3.0),
                                                  units::fs_to_au(25.0), 0.0);
    RelaxationRates rates{units::per_fs_to_au(0.1), units::per_fs_to_au(0.3)};
    const double dt = p.cycle() / 512;
    const int nsteps = static_cast<int>(std::ceil(p.tau / dt));
    std::vector<Eigen::MatrixXcd> rk_traj(static_cast<std::size_t>(nsteps) + 1);
    SnapshotFn keep = [&](int step, double, const Eigen::MatrixXcd& rho) {
      rk_traj[static_cast<std::size_t>(step)] = rho;
    };
    const Eigen::VectorXd e = bs.energies[ik].segment(bs.n0, bs.n_window);
    propagate_current_k(e, bs.momentum[ik], rates, p, p.tau / nsteps, nsteps, nullptr, &keep);
    double worst = 0;
    SnapshotFn compare = [&](int step, double, const Eigen::MatrixXcd& rho) {
      worst = std::max(worst,
                       (rho - rk_traj[static_cast<std::size_t>(step)]).cwiseAbs().maxCoeff());
    };
    propagate_expm_reference(e, bs.momentum[ik], rates, p, p.tau / nsteps, nsteps, 100, compare);
    std::string d = "max |drho| = " + format_g17(worst);
    all &= check("RK4 vs matrix-exponential reference", worst < 1e-7, &d);
  }
  {
    // Spectrum of a pure tone lands on the tone.
    const double w0 = 0.05;
    const int n = 4096;
    const double dt = 0.5;
    std::vector<double> j(n);
    for (int i = 0; i < n; ++i) j[static_cast<std::size_t>(i)] = std::sin(w0 * i * dt);
    const SpectrumResult sp = power_spectrum(j, dt, w0, SpectrumWindow::Rect, 4);
    const PeakTable table = harmonic_peaks(sp, 3);
    std::string d = "peak at omega/omega0 = " + format_g17(table.global_max_om);
    all &= check("pure-tone spectrum", std::abs(table.global_max_om - 1.0) < 0.01, &d);
  }
  std::cout << (all ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D two-band-lattice high-harmonic generation simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  const char* names[] = {"bands", "run", "subset", "buildup", "scan-f0"};
  const char* descs[] = {"Solve the Bloch bands and report the gap",
                         "Full-zone pulse propagation, current, and spectrum",
                         "Propagate a k subset (single, pair, interval, or list)",
                         "Cutoff buildup over symmetric k intervals",
                         "Cutoff versus field-amplitude scan with linear fit"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* cmd = app.add_subcommand(names[i], descs[i]);
    add_common(cmd, &args);
  }
  app.add_subcommand("selftest", "Run fast built-in consistency checks");

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    if (sub == "selftest") return selftest();
    return run_command(sub, args);
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const NumericalError& ex) {
    std::cerr << "numerical error: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
