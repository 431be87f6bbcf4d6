#include "hhg/bands.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hhg/errors.hpp"

namespace hhg {

namespace {
constexpr double kPi = std::numbers::pi;
}

KGrid KGrid::make(double a, int n_k) {
  if (!(a > 0) || !std::isfinite(a)) throw ConfigError("grid: lattice constant must be positive");
  if (n_k < 3 || n_k % 2 == 0) {
    throw ConfigError("grid.n_k must be an odd integer >= 3, got " + std::to_string(n_k));
  }
  KGrid g;
  g.a = a;
  g.k.assign(static_cast<std::size_t>(n_k), 0.0);
  const int half = (n_k - 1) / 2;
  for (int j = 1; j <= half; ++j) {
    const double kj = (kPi / a) * static_cast<double>(j) / static_cast<double>(half);
    g.k[static_cast<std::size_t>(half + j)] = kj;
    g.k[static_cast<std::size_t>(half - j)] = -kj;
  }
  return g;
}

void solve_single_k(const FourierPotential& fp, double a, double k, int n_solved, int m_cutoff,
                    Eigen::VectorXd& energies, Eigen::MatrixXcd& coeffs) {
  const int nb = 2 * m_cutoff + 1;
  if (n_solved > nb) throw ConfigError("bands.n_solved exceeds plane-wave basis size");
  Eigen::MatrixXcd h(nb, nb);
  for (int i = 0; i < nb; ++i) {
    const double gi = 2.0 * kPi * (i - m_cutoff) / a;
    for (int j = 0; j < nb; ++j) {
      h(i, j) = fp.at((i - m_cutoff) - (j - m_cutoff));
    }
    h(i, i) += 0.5 * (k + gi) * (k + gi);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("plane-wave eigensolve failed");
  energies = es.eigenvalues().head(n_solved);
  coeffs.resize(n_solved, nb);
  for (int n = 0; n < n_solved; ++n) {
    Eigen::VectorXcd v = es.eigenvectors().col(n);
    int imax = 0;
    double best = std::norm(v(0));
    for (int i = 1; i < nb; ++i) {
      const double w = std::norm(v(i));
      if (w > best) {
        best = w;
        imax = i;
      }
    }
    // Multiplying by the conjugate before normalizing leaves the anchor
    // component exactly real positive, not merely real to rounding.
    coeffs.row(n) = (v * std::conj(v(imax))).transpose() / std::abs(v(imax));
  }
}

Eigen::MatrixXcd momentum_block(double k, double a, const Eigen::MatrixXcd& coeffs, int band0, int n) {
  const int nb = static_cast<int>(coeffs.cols());
  const int m_cutoff = (nb - 1) / 2;
  Eigen::MatrixXcd p(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      std::complex<double> acc = 0.0;
      for (int g = 0; g < nb; ++g) {
        const double kg = k + 2.0 * kPi * (g - m_cutoff) / a;
        // Forming the conjugate product before the real scale keeps the
        // diagonal exactly real; the lower triangle mirrors the upper, so the
        // block is Hermitian bitwise, not just to rounding.
        acc += std::conj(coeffs(band0 + r, g)) * coeffs(band0 + c, g) * kg;
      }
      p(r, c) = acc;
      if (c != r) p(c, r) = std::conj(acc);
    }
  }
  return p;
}

double direct_gap_min(const BandStructure& bs, int n, int* argmin_ik) {
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int ik = 0; ik < bs.grid.size(); ++ik) {
    const double d = bs.energies[static_cast<std::size_t>(ik)](n + 1) -
                     bs.energies[static_cast<std::size_t>(ik)](n);
    if (d < best) {
      best = d;
      arg = ik;
    }
  }
  if (argmin_ik) *argmin_ik = arg;
  return best;
}

namespace {

int select_valence_band(const BandStructure& bs, const BandSolveOptions& opt) {
  int best_n = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int n = 0; n + 1 < bs.n_solved; ++n) {
    double emax = -std::numeric_limits<double>::infinity();
    for (int ik = 0; ik < bs.grid.size(); ++ik) {
      emax = std::max(emax, bs.energies[static_cast<std::size_t>(ik)](n));
    }
    if (emax > opt.band_ceiling) continue;
    const double gap = direct_gap_min(bs, n);
    const double dist = std::abs(gap - opt.reference_gap);
    if (dist < best_dist) {
      best_dist = dist;
      best_n = n;
    }
  }
  if (best_n < 0) throw ConfigError("bands: no candidate valence band below the energy ceiling");
  return best_n;
}

}  // namespace

BandStructure solve_bands(const PotentialSpec& spec, const KGrid& grid, const BandSolveOptions& opt) {
  if (grid.a != spec.a) throw ConfigError("grid was built for a different lattice constant");
  if (opt.n_window < 1) throw ConfigError("bands.n_bands must be >= 1");
  if (opt.n_solved < opt.n_window + 1) throw ConfigError("bands.n_solved must exceed bands.n_bands");
  if (opt.m_cutoff < 4) throw ConfigError("bands.m_cutoff must be >= 4");

  const FourierPotential fp = fourier_coefficients(spec, 2 * opt.m_cutoff);
  const int nk = grid.size();
  const int ctr = grid.center();
  const int ncol = 2 * opt.m_cutoff + 1;

  BandStructure bs;
  bs.grid = grid;
  bs.m_cutoff = opt.m_cutoff;
  bs.n_solved = opt.n_solved;
  bs.n_window = opt.n_window;
  bs.energies.resize(static_cast<std::size_t>(nk));
  bs.coeffs.resize(static_cast<std::size_t>(nk));
  bs.momentum.resize(static_cast<std::size_t>(nk));

  for (int ik = ctr; ik < nk; ++ik) {
    solve_single_k(fp, spec.a, grid.k[static_cast<std::size_t>(ik)], opt.n_solved, opt.m_cutoff,
                   bs.energies[static_cast<std::size_t>(ik)], bs.coeffs[static_cast<std::size_t>(ik)]);
  }
  for (int ik = 0; ik < ctr; ++ik) {
    const std::size_t src = static_cast<std::size_t>(grid.mirror(ik));
    bs.energies[static_cast<std::size_t>(ik)] = bs.energies[src];
    Eigen::MatrixXcd& c = bs.coeffs[static_cast<std::size_t>(ik)];
    c.resize(opt.n_solved, ncol);
    for (int n = 0; n < opt.n_solved; ++n) {
      for (int g = 0; g < ncol; ++g) {
        c(n, g) = std::conj(bs.coeffs[src](n, ncol - 1 - g));
      }
    }
  }

  bs.n0 = opt.n0_override >= 0 ? opt.n0_override : select_valence_band(bs, opt);
  if (bs.n0 + opt.n_window > opt.n_solved || bs.n0 + 1 >= opt.n_solved) {
    throw ConfigError("bands: valence index " + std::to_string(bs.n0) +
                      " leaves no room for the requested band window");
  }

  for (int ik = ctr; ik < nk; ++ik) {
    bs.momentum[static_cast<std::size_t>(ik)] = momentum_block(
        grid.k[static_cast<std::size_t>(ik)], spec.a, bs.coeffs[static_cast<std::size_t>(ik)],
        bs.n0, opt.n_window);
  }
  for (int ik = 0; ik < ctr; ++ik) {
    const std::size_t src = static_cast<std::size_t>(grid.mirror(ik));
    bs.momentum[static_cast<std::size_t>(ik)] = -bs.momentum[src].conjugate();
  }

  bs.gap_value = direct_gap_min(bs, bs.n0, &bs.gap_k_index);
  if (!(bs.gap_value > 0)) {
    throw NumericalError("bands: direct gap above the valence band is not positive everywhere");
  }

  if (opt.convergence_check) {
    const FourierPotential fp2 = fourier_coefficients(spec, 2 * (opt.m_cutoff + 4));
    const int probes[3] = {ctr, nk - 1, (ctr + nk - 1) / 2};
    double resid = 0.0;
    Eigen::VectorXd e2;
    Eigen::MatrixXcd c2;
    for (int ik : probes) {
      solve_single_k(fp2, spec.a, grid.k[static_cast<std::size_t>(ik)], opt.n_solved,
                     opt.m_cutoff + 4, e2, c2);
      resid = std::max(resid,
                       (bs.energies[static_cast<std::size_t>(ik)] - e2).cwiseAbs().maxCoeff());
    }
    bs.convergence_residual = resid;
  }
  return bs;
}

CalibrationResult calibrate_lattice_constant(const PotentialSpec& spec, int n_k,
                                             const BandSolveOptions& opt, double target_gap,
                                             double rel_tol) {
  BandSolveOptions inner = opt;
  inner.convergence_check = false;
  {
    const BandStructure bs0 = solve_bands(spec, KGrid::make(spec.a, n_k), inner);
    inner.n0_override = bs0.n0;
  }
  auto gap_at = [&](double a) {
    PotentialSpec s = spec;
    s.a = a;
    return solve_bands(s, KGrid::make(a, n_k), inner).gap_value;
  };

  const double tol = rel_tol * target_gap;
  double lo = 0.8 * spec.a, hi = 1.3 * spec.a;
  double glo = gap_at(lo), ghi = gap_at(hi);
  int iters = 2;
  if ((glo - target_gap) * (ghi - target_gap) > 0) {
    lo = 0.6 * spec.a;
    hi = 1.6 * spec.a;
    glo = gap_at(lo);
    ghi = gap_at(hi);
    iters += 2;
    if ((glo - target_gap) * (ghi - target_gap) > 0) {
      throw NumericalError("calibration: target gap not bracketed by lattice-constant scan");
    }
  }
  double mid = lo, gm = glo;
  for (int it = 0; it < 60; ++it) {
    mid = 0.5 * (lo + hi);
    gm = gap_at(mid);
    ++iters;
    if (std::abs(gm - target_gap) <= tol) break;
    if ((glo - target_gap) * (gm - target_gap) <= 0) {
      hi = mid;
      ghi = gm;
    } else {
      lo = mid;
      glo = gm;
    }
  }
  if (std::abs(gm - target_gap) > tol) {
    throw NumericalError("calibration: bisection did not reach the requested gap tolerance");
  }
  CalibrationResult res;
  res.a_star = mid;
  res.gap = gm;
  res.n0 = inner.n0_override;
  res.iterations = iters;
  return res;
}

}  // namespace hhg
