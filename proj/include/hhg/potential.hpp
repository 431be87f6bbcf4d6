#pragma once

#include <array>
#include <complex>
#include <vector>

namespace hhg {

enum class PotentialKind { CosineWells, SinhWells };

// Two-well periodic lattice potential on a cell of length a (bohr).
// Centers are fractions of the cell. CosineWells places a truncated
// -U0*cos^2(pi d / delta) lobe of full width delta = width_ratio * a at each
// center; outside its lobe a well contributes nothing. SinhWells assigns each
// point to the nearest center (minimum image) and evaluates
// -U_shift + U0*sinh^2(d/a) for the displacement d to that center.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::CosineWells;
  double a = 0;            // bohr
  double u0 = 0;           // hartree, well depth (cos) or sinh amplitude
  double width_ratio = 0;  // cos lobe width as a fraction of a
  double u_shift = 0;      // hartree, sinh offset
  std::array<double, 2> centers = {0, 0};  // fractions of a, ascending

  static PotentialSpec cosine_defaults();
  static PotentialSpec sinh_defaults();
  static PotentialSpec defaults(PotentialKind kind);

  // Throws ConfigError on non-finite or out-of-range parameters.
  void validate() const;
};

double evaluate_potential(const PotentialSpec& spec, double x);

// Fourier coefficients c_m of U on the reciprocal lattice, m in [-m_max, m_max]:
// U(x) = sum_m c_m exp(i 2 pi m x / a). Computed in closed form.
struct FourierPotential {
  int m_max = 0;
  std::vector<std::complex<double>> c;  // index m + m_max

  std::complex<double> at(int m) const {
    if (m < -m_max || m > m_max) return {0.0, 0.0};
    return c[static_cast<std::size_t>(m + m_max)];
  }
};

FourierPotential fourier_coefficients(const PotentialSpec& spec, int m_max);

}  // namespace hhg
