#include "hhg/fd_oracle.hpp"

#include <lapacke.h>

#include <complex>
#include <vector>

#include "hhg/errors.hpp"

namespace hhg {

std::vector<double> fd_band_energies(const PotentialSpec& spec, double k, int n_bands, int n_grid) {
  if (n_bands < 1 || n_grid < 16) throw ConfigError("fd oracle: need n_bands >= 1, n_grid >= 16");
  const int n = n_grid;
  const double h = spec.a / n;
  const double inv_h2 = 1.0 / (h * h);
  const double inv_h = 1.0 / h;

  // 4th-order stencils for u'' and u'.
  const double c2[5] = {-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
  const double c1[5] = {1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0};

  std::vector<std::complex<double>> a(static_cast<std::size_t>(n) * n, {0.0, 0.0});
  auto at = [&](int row, int col) -> std::complex<double>& {
    return a[static_cast<std::size_t>(col) * n + row];  // column-major
  };
  for (int j = 0; j < n; ++j) {
    const double x = j * h;
    at(j, j) += evaluate_potential(spec, x) + 0.5 * k * k;
    for (int s = -2; s <= 2; ++s) {
      const int col = ((j + s) % n + n) % n;
      const double w2 = c2[s + 2] * inv_h2;
      const double w1 = c1[s + 2] * inv_h;
      at(j, col) += std::complex<double>(-0.5 * w2, -k * w1);
    }
  }

  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> z(1);
  std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * n_bands + 2));
  lapack_int m = 0;
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, 'N', 'I', 'L', n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
      0.0, 0.0, 1, n_bands, 0.0, &m, w.data(), reinterpret_cast<lapack_complex_double*>(z.data()),
      1, isuppz.data());
  if (info != 0 || m < n_bands) throw NumericalError("fd oracle: LAPACK zheevr failed");
  w.resize(static_cast<std::size_t>(n_bands));
  return w;
}

std::vector<double> fd_band_energies_richardson(const PotentialSpec& spec, double k, int n_bands,
                                                int n_grid) {
  const std::vector<double> coarse = fd_band_energies(spec, k, n_bands, n_grid);
  const std::vector<double> fine = fd_band_energies(spec, k, n_bands, 2 * n_grid);
  std::vector<double> out(static_cast<std::size_t>(n_bands));
  for (int i = 0; i < n_bands; ++i) {
    out[static_cast<std::size_t>(i)] =
        (4.0 * fine[static_cast<std::size_t>(i)] - coarse[static_cast<std::size_t>(i)]) / 3.0;
  }
  return out;
}

}  // namespace hhg
