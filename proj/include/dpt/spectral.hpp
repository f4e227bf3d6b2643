#pragma once

#include <utility>
#include <vector>

#include "dpt/lattice.hpp"

namespace dpt {

// Full spectrum of a hopping chain.  Eigenvalues ascending (Hz); eigenvector
// n occupies vectors[n*sites .. n*sites+sites-1] (row-contiguous, real —
// the Hamiltonian is real symmetric).  pairing/zero_modes come from
// classify_chiral with the default tolerance.
struct EigenSystem {
  int sites = 0;
  std::vector<double> eigenvalues;
  std::vector<double> vectors;
  std::vector<std::pair<int, int>> pairing;  // (index of +E_m, index of -E_m)
  std::vector<int> zero_modes;

  const double* vec(int n) const {
    return vectors.data() + static_cast<std::size_t>(n) * sites;
  }
  double* vec(int n) {
    return vectors.data() + static_cast<std::size_t>(n) * sites;
  }
};

struct ChiralClassification {
  std::vector<std::pair<int, int>> pairing;
  std::vector<int> zero_modes;
};

struct OccupationProfile {
  std::vector<double> weights;  // |<psi_n|psi0>|^2, sums to 1
};

// Implicit-shift QL diagonalization of the chain's symmetric tridiagonal
// matrix.  Degenerate clusters (spread < 1e-9 * max|E|) are re-orthogonalized
// and rotated to diagonalize the chiral operator; each rotated vector is
// reassigned its Rayleigh quotient as eigenvalue (so a polarized zero-mode
// representative reports an energy at solver-noise level rather than half the
// doublet splitting) and the cluster is re-sorted ascending, chirality
// expectation descending on ties.  Every vector is sign-fixed so its
// largest-magnitude component is positive.
EigenSystem eigendecompose(const HoppingChain& chain);

// Greedy +-E pairing by sorted magnitude.  Indices with
// |E| < zero_tol_rel * max|E| are flagged as zero modes; a non-zero
// eigenvalue without an opposite-sign partner of matching magnitude is a
// symmetry violation (std::runtime_error).
ChiralClassification classify_chiral(const EigenSystem& eig,
                                     double zero_tol_rel = 1e-2);

// <psi_n | Gamma | psi_n> for eigenvector `index`.
double sublattice_support(const EigenSystem& eig, const ChiralOperator& gamma,
                          int index);

// Complex overlaps a_n = <psi_n|psi0>, split into real/imaginary parts.
void project(const EigenSystem& eig, const StateVector& psi0,
             std::vector<double>& a_re, std::vector<double>& a_im);

OccupationProfile occupations(const EigenSystem& eig, const StateVector& psi0);

// S(f) = sum_n weights[n] * L(f - E_n), L a unit-peak Lorentzian with the
// given full width at half maximum (Hz).
std::vector<double> response_spectrum(const EigenSystem& eig,
                                      const StateVector& psi0,
                                      double linewidth,
                                      const std::vector<double>& grid);

}  // namespace dpt
