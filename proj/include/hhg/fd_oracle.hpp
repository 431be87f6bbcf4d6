#pragma once

#include <vector>

#include "hhg/potential.hpp"

namespace hhg {

// Independent check on the plane-wave band solver: the Bloch cell problem
//   -(1/2) u'' - i k u' + (k^2 / 2) u + V u = E u,  u periodic on [0, a),
// discretized with 4th-order central differences on n_grid points and solved
// with LAPACK. The wells have derivative kinks at their edges, which limits
// the observed eigenvalue convergence to O(h^2).
std::vector<double> fd_band_energies(const PotentialSpec& spec, double k, int n_bands, int n_grid);

// Richardson extrapolation over the (n_grid, 2 n_grid) pair removes the h^2
// leading error term.
std::vector<double> fd_band_energies_richardson(const PotentialSpec& spec, double k, int n_bands,
                                                int n_grid);

}  // namespace hhg
