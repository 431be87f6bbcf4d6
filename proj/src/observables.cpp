#include "hhg/observables.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hhg/errors.hpp"

namespace hhg {

namespace {
constexpr double kPi = std::numbers::pi;

int next_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace

std::vector<double> CurrentTrace::times() const {
  std::vector<double> t(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) t[i] = static_cast<double>(i) * dt;
  return t;
}

SpectrumResult power_spectrum(const std::vector<double>& j, double dt, double omega_l,
                              SpectrumWindow window, int pad_factor) {
  const int n = static_cast<int>(j.size());
  if (n < 4) throw ConfigError("spectrum: current trace too short");
  if (pad_factor < 1) throw ConfigError("spectrum.pad_factor must be >= 1");
  const int nfft = pad_factor * next_pow2(n);

  double* in = fftw_alloc_real(static_cast<std::size_t>(nfft));
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(nfft / 2 + 1));
  for (int i = 0; i < n; ++i) {
    double w = 1.0;
    if (window == SpectrumWindow::Hann) {
      w = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));
    }
    in[i] = w * j[static_cast<std::size_t>(i)];
  }
  std::fill(in + n, in + nfft, 0.0);

  fftw_plan plan = fftw_plan_dft_r2c_1d(nfft, in, out, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  SpectrumResult sp;
  sp.omega_l = omega_l;
  sp.window = window;
  sp.pad_factor = pad_factor;
  sp.nfft = nfft;
  sp.domega = 2.0 * kPi / (nfft * dt);
  const int nbins = nfft / 2 + 1;
  sp.om_over_ol.resize(static_cast<std::size_t>(nbins));
  sp.s.resize(static_cast<std::size_t>(nbins));
  for (int i = 0; i < nbins; ++i) {
    const double re = dt * out[i][0];
    const double im = dt * out[i][1];
    sp.om_over_ol[static_cast<std::size_t>(i)] = i * sp.domega / omega_l;
    sp.s[static_cast<std::size_t>(i)] = re * re + im * im;
  }
  fftw_free(in);
  fftw_free(out);
  return sp;
}

const HarmonicPeak* PeakTable::at(int h) const {
  for (const HarmonicPeak& p : peaks) {
    if (p.h == h) return &p;
  }
  return nullptr;
}

namespace {

// Extremum of S over the omega/omega_L interval [lo, hi]; returns false if the
// interval holds no bins.
bool scan_interval(const SpectrumResult& sp, double lo, double hi, bool want_max, double* val,
                   double* om_at) {
  int best = -1;
  for (std::size_t i = 0; i < sp.s.size(); ++i) {
    const double om = sp.om_over_ol[i];
    if (om < lo) continue;
    if (om > hi) break;
    if (best < 0 || (want_max ? sp.s[i] > sp.s[static_cast<std::size_t>(best)]
                              : sp.s[i] < sp.s[static_cast<std::size_t>(best)])) {
      best = static_cast<int>(i);
    }
  }
  if (best < 0) return false;
  *val = sp.s[static_cast<std::size_t>(best)];
  if (om_at) *om_at = sp.om_over_ol[static_cast<std::size_t>(best)];
  return true;
}

}  // namespace

PeakTable harmonic_peaks(const SpectrumResult& sp, int hmax) {
  if (hmax < 1) throw ConfigError("spectrum.hmax must be >= 1");
  PeakTable table;
  for (int h = 1; h <= hmax; ++h) {
    HarmonicPeak p;
    p.h = h;
    if (!scan_interval(sp, h - 0.4, h + 0.4, true, &p.s_peak, &p.om_at_peak)) break;
    double v = 0.0;
    p.valley_lo = scan_interval(sp, h - 1.0, h - 0.6, false, &v, nullptr) ? v : 0.0;
    p.valley_hi = scan_interval(sp, h + 0.6, h + 1.0, false, &v, nullptr) ? v : 0.0;
    table.peaks.push_back(p);
  }

  std::vector<double> floor_bins;
  for (std::size_t i = 0; i < sp.s.size(); ++i) {
    const double om = sp.om_over_ol[i];
    if (om >= 0.5 && om <= hmax + 0.5) floor_bins.push_back(sp.s[i]);
  }
  table.floor_median = median_of(std::move(floor_bins));

  table.global_max = 0.0;
  for (std::size_t i = 0; i < sp.s.size(); ++i) {
    if (sp.s[i] > table.global_max) {
      table.global_max = sp.s[i];
      table.global_max_om = sp.om_over_ol[i];
    }
  }
  return table;
}

std::optional<int> cutoff_harmonic(const PeakTable& table) {
  int above_floor = 0;
  for (const HarmonicPeak& p : table.peaks) {
    if (p.h >= 3 && p.h % 2 == 1 && p.s_peak >= 100.0 * table.floor_median) ++above_floor;
  }
  if (above_floor < 3) return std::nullopt;

  std::vector<double> plateau;
  int last_pass = 0;
  for (const HarmonicPeak& p : table.peaks) {
    if (p.h < 3 || p.h % 2 == 0) continue;
    plateau.push_back(p.s_peak);
    const double med = median_of(plateau);
    if (p.s_peak < med / 100.0) break;
    last_pass = p.h;
  }
  if (last_pass == 0) return std::nullopt;
  return last_pass;
}

int resolvable_odd_count(const PeakTable& table, double contrast) {
  int count = 0;
  for (const HarmonicPeak& p : table.peaks) {
    if (p.h < 3 || p.h % 2 == 0) continue;
    if (p.s_peak >= contrast * p.valley_lo && p.s_peak >= contrast * p.valley_hi) ++count;
  }
  return count;
}

int support_reach(const PeakTable& table, double contrast, double floor_rel) {
  int reach = 0;
  for (const HarmonicPeak& p : table.peaks) {
    if (p.h < 3 || p.h % 2 == 0) continue;
    if (p.s_peak >= contrast * p.valley_lo && p.s_peak >= contrast * p.valley_hi &&
        p.s_peak >= floor_rel * table.global_max) {
      reach = p.h;
    }
  }
  return reach;
}

double even_odd_ratio(const PeakTable& table, int h_even) {
  const HarmonicPeak* even = table.at(h_even);
  const HarmonicPeak* lo = table.at(h_even - 1);
  const HarmonicPeak* hi = table.at(h_even + 1);
  if (!even || !lo || !hi) throw ConfigError("even_odd_ratio: harmonic table too short");
  return even->s_peak / std::min(lo->s_peak, hi->s_peak);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) return fit;
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0) {
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += r * r;
    }
    fit.r2 = 1.0 - ss_res / syy;
    fit.r2_defined = true;
  }
  return fit;
}

std::string window_name(SpectrumWindow w) { return w == SpectrumWindow::Hann ? "hann" : "rect"; }

}  // namespace hhg
