#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "hhg/potential.hpp"

namespace hhg {

// Symmetric k grid spanning [-pi/a, pi/a] inclusive with an odd point count,
// so k = 0 and every +k has its exact mirror -k (bitwise negation).
struct KGrid {
  double a = 0;
  std::vector<double> k;

  static KGrid make(double a, int n_k);

  int size() const { return static_cast<int>(k.size()); }
  int center() const { return (size() - 1) / 2; }
  int mirror(int i) const { return size() - 1 - i; }
};

struct BandSolveOptions {
  int m_cutoff = 48;   // plane waves G = 2 pi g / a with g in [-m_cutoff, m_cutoff]
  int n_solved = 16;   // bands retained from each diagonalization
  int n_window = 4;    // bands entering the dynamics, starting at n0
  int n0_override = -1;  // fixed valence index; -1 selects automatically
  double reference_gap = 0.11758547322429928;  // 3.2 eV, target for automatic n0
  double band_ceiling = std::numeric_limits<double>::infinity();
  bool convergence_check = true;
};

struct BandStructure {
  KGrid grid;
  int m_cutoff = 0;
  int n_solved = 0;
  int n_window = 0;
  int n0 = 0;
  std::vector<Eigen::VectorXd> energies;   // [ik], length n_solved
  std::vector<Eigen::MatrixXcd> coeffs;    // [ik], n_solved x (2 m_cutoff + 1)
  std::vector<Eigen::MatrixXcd> momentum;  // [ik], n_window x n_window, bands n0..n0+n_window-1
  double convergence_residual = 0;  // max |E(M) - E(M+4)| over probe k points
  double gap_value = 0;             // min_k E_{n0+1} - E_{n0}
  int gap_k_index = 0;

  double gap() const { return gap_value; }
};

// Diagonalizes the plane-wave Bloch Hamiltonian at a single k. Returns
// eigenvalues ascending; coefficient row n holds band n with the phase fixed
// so the largest-magnitude component is real positive.
void solve_single_k(const FourierPotential& fp, double a, double k, int n_solved, int m_cutoff,
                    Eigen::VectorXd& energies, Eigen::MatrixXcd& coeffs);

// Momentum matrix block for bands [band0, band0 + n) at one k:
// P_{nm} = sum_g (k + G_g) conj(c_n_g) c_m_g.
Eigen::MatrixXcd momentum_block(double k, double a, const Eigen::MatrixXcd& coeffs, int band0, int n);

// Full solve over a symmetric grid. Only k >= 0 is diagonalized; the k < 0
// half is filled by the time-reversal images c_n(-k, G) = conj(c_n(k, -G)),
// which makes E(-k) = E(k) and P(-k) = -conj(P(k)) hold exactly in floating
// point, not merely to solver tolerance.
BandStructure solve_bands(const PotentialSpec& spec, const KGrid& grid, const BandSolveOptions& opt);

// Minimum direct gap above band n over the grid, and its location.
double direct_gap_min(const BandStructure& bs, int n, int* argmin_ik = nullptr);

struct CalibrationResult {
  double a_star = 0;
  double gap = 0;
  int n0 = 0;  // valence index determined at the starting lattice constant
  int iterations = 0;
};

// Adjusts the lattice constant by bisection until the direct gap above the
// (fixed) valence band matches target_gap within rel_tol. The valence index is
// determined once at the starting lattice constant and held fixed.
CalibrationResult calibrate_lattice_constant(const PotentialSpec& spec, int n_k,
                                             const BandSolveOptions& opt, double target_gap,
                                             double rel_tol);

}  // namespace hhg
