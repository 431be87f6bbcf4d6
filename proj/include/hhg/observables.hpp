#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hhg {

enum class SpectrumWindow { Hann, Rect };

struct CurrentTrace {
  double dt = 0;
  std::vector<double> j;  // net current J(t_i), i = 0..nsteps

  std::vector<double> times() const;
};

struct SpectrumResult {
  double omega_l = 0;
  double domega = 0;                  // bin spacing, a.u.
  std::vector<double> om_over_ol;     // omega / omega_L per bin
  std::vector<double> s;              // |dt * FFT(window * J)|^2
  SpectrumWindow window = SpectrumWindow::Hann;
  int pad_factor = 0;
  int nfft = 0;
};

// Power spectrum of the emitted current. The trace is windowed (symmetric Hann
// by default), zero-padded to pad_factor times the next power of two, and
// transformed; S = |dt * X|^2 on the non-negative frequency half.
SpectrumResult power_spectrum(const std::vector<double>& j, double dt, double omega_l,
                              SpectrumWindow window = SpectrumWindow::Hann, int pad_factor = 4);

struct HarmonicPeak {
  int h = 0;
  double s_peak = 0;
  double om_at_peak = 0;   // omega / omega_L
  double valley_lo = 0;    // min S over [h-1, h-0.6]
  double valley_hi = 0;    // min S over [h+0.6, h+1]
};

struct PeakTable {
  std::vector<HarmonicPeak> peaks;  // h = 1..hmax, in order
  double floor_median = 0;          // median of S over omega/omega_L in [0.5, hmax+0.5]
  double global_max = 0;
  double global_max_om = 0;         // omega / omega_L of the global maximum

  const HarmonicPeak* at(int h) const;
};

// Peak in a +-0.4 omega_L window around each harmonic order.
PeakTable harmonic_peaks(const SpectrumResult& sp, int hmax);

// Cutoff harmonic: walk odd orders from h = 3 and stop at the first whose peak
// falls 20 dB below the running median of the odd peaks up to and including it;
// the cutoff is the last passing order. Undefined (nullopt) unless at least
// three odd peaks rise 20 dB above the spectral floor median.
std::optional<int> cutoff_harmonic(const PeakTable& table);

// Number of odd orders h >= 3 whose peak rises at least `contrast` above both
// adjacent inter-harmonic valleys.
int resolvable_odd_count(const PeakTable& table, double contrast = 100.0);

// Largest odd order that is resolvable by the same valley contrast and also
// sits above floor_rel times the global spectrum maximum; 0 if none.
int support_reach(const PeakTable& table, double contrast = 100.0, double floor_rel = 1e-14);

// even-harmonic suppression: S(h_even) / min(S(h-1), S(h+1)).
double even_odd_ratio(const PeakTable& table, int h_even);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  bool r2_defined = false;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

std::string window_name(SpectrumWindow w);

}  // namespace hhg
