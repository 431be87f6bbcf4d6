#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "hhg/bands.hpp"
#include "hhg/sweep.hpp"
#include "hhg/units.hpp"

// Times the serial k sweep against the OpenMP sweep on a reduced problem and
// checks that both produce bitwise-identical trajectories.

using namespace hhg;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark: serial vs OpenMP k sweep"};
  int n_k = 41;
  double tau_fs = 60.0;
  double f0_gvm = 2.0;
  int repeats = 1;
  std::vector<int> thread_list{1, 2, 4};
  app.add_option("--nk", n_k, "k-grid points (odd)");
  app.add_option("--tau-fs", tau_fs, "pulse duration in fs");
  app.add_option("--f0", f0_gvm, "peak field in GV/m");
  app.add_option("--repeats", repeats, "timing repeats per row");
  app.add_option("--threads-list", thread_list, "thread counts to time")->take_all();
  CLI11_PARSE(app, argc, argv);

  const PotentialSpec spec = PotentialSpec::cosine_defaults();
  BandSolveOptions opt;
  const BandStructure bs = solve_bands(spec, KGrid::make(spec.a, n_k), opt);

  const PulseParams pulse = PulseParams::from_field(
      units::gvm_to_au(f0_gvm), units::um_to_bohr(3.0), units::fs_to_au(tau_fs), 0.0);
  const RelaxationRates rates{units::per_fs_to_au(0.1), units::per_fs_to_au(0.3)};
  const double dt_nominal = pulse.cycle() / 512;
  const int nsteps = static_cast<int>(std::ceil(pulse.tau / dt_nominal));
  const double dt = pulse.tau / nsteps;

  std::printf("n_k = %d, nsteps = %d, bands window = %d\n", bs.grid.size(), nsteps, bs.n_window);
  std::printf("%-10s %12s %10s %10s\n", "variant", "time [s]", "speedup", "identical");

  const auto t0 = std::chrono::steady_clock::now();
  SweepResult ref;
  for (int r = 0; r < repeats; ++r) ref = sweep_serial(bs, pulse, rates, dt, nsteps);
  const double t_serial = seconds_since(t0) / repeats;
  std::printf("%-10s %12.3f %10s %10s\n", "serial", t_serial, "1.00x", "-");

  bool all_identical = true;
  for (const int nt : thread_list) {
    const auto t1 = std::chrono::steady_clock::now();
    SweepResult par;
    for (int r = 0; r < repeats; ++r) par = sweep_parallel(bs, pulse, rates, dt, nsteps, nt);
    const double t_par = seconds_since(t1) / repeats;

    bool identical = par.jk.size() == ref.jk.size();
    for (std::size_t i = 0; identical && i < ref.jk.size(); ++i)
      identical = par.jk[i] == ref.jk[i];
    all_identical &= identical;

    char label[32];
    std::snprintf(label, sizeof(label), "omp(%d)", nt);
    std::printf("%-10s %12.3f %9.2fx %10s\n", label, t_par, t_serial / t_par,
                identical ? "yes" : "NO");
  }

  if (!all_identical) {
    std::fprintf(stderr, "error: parallel sweep diverged from the serial reference\n");
    return 1;
  }
  return 0;
}
