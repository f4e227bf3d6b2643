#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "dpt/lattice.hpp"
#include "dpt/spectral.hpp"

namespace dpt {

// A quench: prepare a state, evolve it under final_chain.  The initial state
// is either given explicitly or taken as the chirality-polarized near-zero
// edge eigenstate of initial_chain (which must be topological).
struct QuenchSpec {
  HoppingChain final_chain;
  std::optional<HoppingChain> initial_chain;
  StateVector initial_state;
  std::vector<double> times;  // seconds; starts at 0, strictly increasing
};

// Time series of the return amplitude and its phases for one quench.
// phi is the total phase arg G; phi = phi_dyn + phi_p (mod 2*pi) at every
// sample.  At samples where |G| falls below the zero tolerance the phases
// are carried forward from the previous sample and flagged in `carried`.
struct LoschmidtTrace {
  std::vector<double> times;
  std::vector<std::complex<double>> g;
  std::vector<double> r;        // |G|
  std::vector<double> rate;     // lambda = -(1/N) ln r^2; +inf at exact zeros
  std::vector<double> phi;      // total phase (rad)
  std::vector<double> phi_dyn;  // dynamical phase (rad)
  std::vector<double> phi_p;    // Pancharatnam geometric phase (rad)
  std::vector<bool> carried;
};

enum class SizeVerdict { robust, size_artifact, not_applicable };

struct DptReport {
  bool dpt_present = false;
  std::vector<double> critical_times;   // s, ascending
  std::vector<double> pgp_jump_times;   // s, ascending
  double min_abs_g = 1.0;
  SizeVerdict finite_size_verdict = SizeVerdict::not_applicable;
};

// Chirally merged form of G(t) for a sublattice-polarized initial state:
// G(t) = c0 + sum_m 2*w[m]*cos(2*pi*e[m]*t), real by construction.
struct MergedSpectrum {
  double c0 = 0.0;        // total zero-mode weight (constant term)
  std::vector<double> e;  // pair energies E_m > 0 (Hz), ascending
  std::vector<double> w;  // symmetrized pair weights (w_+ + w_-)/2
};

struct PhaseSeries {
  std::vector<double> phi;
  std::vector<bool> carried;
};

// The chirality-(+1) combination of the two near-zero eigenstates: the
// left-edge mode, exactly supported on the odd sublattice.  Throws when the
// chain does not carry a zero-mode doublet (i.e. it is not topological).
StateVector edge_eigenstate(const EigenSystem& eig);
StateVector edge_eigenstate(const HoppingChain& chain);

// psi(t) = sum_n e^{-i 2 pi E_n t} <psi_n|psi0> |psi_n>  (E_n in Hz).
StateVector evolve(const EigenSystem& eig, const StateVector& psi0, double t);

// G(t) = <psi0|psi(t)> evaluated spectrally.  Uniformly spaced grids take a
// phasor-recurrence fast path.
std::vector<std::complex<double>> loschmidt(const EigenSystem& eig,
                                            const StateVector& psi0,
                                            const std::vector<double>& times);

// Precondition: psi0 sublattice-polarized (|<Gamma>| = 1 within 1e-8).
MergedSpectrum merge_pairs(const EigenSystem& eig, const StateVector& psi0);
double merged_value(const MergedSpectrum& ms, double t);
std::vector<double> merged_loschmidt(const EigenSystem& eig,
                                     const StateVector& psi0,
                                     const std::vector<double>& times);

// lambda(t) = -(1/N) ln |G|^2 with +infinity at exact zeros.
std::vector<double> rate_function(const std::vector<std::complex<double>>& g,
                                  int unit_cells);
std::vector<double> rate_function(const std::vector<double>& g,
                                  int unit_cells);

// phi_dyn(t) = -2*pi*t * sum_n w_n E_n  (rad).
double dynamical_phase(const EigenSystem& eig, const StateVector& psi0,
                       double t);

// Pancharatnam geometric phase of a chirally real amplitude: 0 where
// Re G > 0, pi where Re G < 0; carried forward and flagged below zero_tol.
// The complex overload asserts |Im G| <= im_tol first.
PhaseSeries pgp(const std::vector<double>& g, double zero_tol = 1e-12);
PhaseSeries pgp(const std::vector<std::complex<double>>& g,
                double zero_tol = 1e-12, double im_tol = 1e-8);

// Jump locations of a (possibly offset) measured PGP series: midpoints of
// samples where the offset-corrected phase moves by more than pi/2.
std::vector<double> pgp_jump_times(const std::vector<double>& times,
                                   const std::vector<double>& phi,
                                   double offset = 0.0);

// Zeros of the merged real G on [0, t_end]: bracketed on a uniform grid
// (default t_end/4000), refined by bisection to root_tol.
std::vector<double> critical_times(const EigenSystem& eig,
                                   const StateVector& psi0, double t_end,
                                   double grid_step = 0.0,
                                   double root_tol = 1e-7);

// Full report for a quench.  escalation_sizes must start at the quench's own
// unit-cell count (default: doubling twice).  The finite-size verdict
// re-runs the quench at the escalated sizes when the chains follow a clean
// two-value pattern and the initial state is scalable (basis edge state or
// derived from a clean initial chain); otherwise it is not_applicable.
DptReport classify_dpt(const QuenchSpec& spec,
                       const std::vector<int>& escalation_sizes = {});

LoschmidtTrace quench_trace(const QuenchSpec& spec);

StateVector resolve_initial_state(const QuenchSpec& spec);

}  // namespace dpt
