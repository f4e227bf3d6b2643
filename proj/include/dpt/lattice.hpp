#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace dpt {

// Open-boundary 1D hopping chain with zero on-site energies.  Couplings are
// bond amplitudes in Hz; the 2*pi conversion to angular frequency happens
// inside the evolution operators, never here.
struct HoppingChain {
  int sites = 0;                   // 2N, even
  int unit_cells = 0;              // N
  std::vector<double> couplings;   // sites-1 bonds, all >= 0
};

// Per-bond disorder offsets delta_j drawn from [-strength, strength].
struct DisorderSpec {
  double strength = 0.0;           // Hz
  std::vector<double> deltas;      // one offset per bond
  std::uint64_t seed = 0;
};

// Diagonal +1/-1 operator: +1 on odd sites, -1 on even sites (1-indexed).
// Anticommutes with any HoppingChain Hamiltonian.
struct ChiralOperator {
  std::vector<double> diagonal;

  static ChiralOperator for_sites(int sites);
};

using StateVector = std::vector<std::complex<double>>;

// Momentum-space d-vector of the two-band chain: d(k) = (dx, dy, 0).
struct BlochVector {
  double k = 0.0;    // radians in [0, 2*pi)
  double dx = 0.0;   // j_intra + j_inter*cos(k), Hz
  double dy = 0.0;   // j_inter*sin(k), Hz
};

enum class Winding { trivial = 0, topological = 1, boundary = 2 };

// Construct a chain from an explicit bond list (general, possibly
// disordered).  Throws std::invalid_argument on bad sizes or negative bonds.
HoppingChain make_chain(std::vector<double> couplings);

// Alternating [j_intra, j_inter, j_intra, ...] chain with 2*unit_cells sites,
// starting and ending on an intracell bond.
HoppingChain build_ssh(int unit_cells, double j_intra, double j_inter);

// bond_count offsets drawn uniformly from [-strength, strength], reproducible
// across platforms for a fixed seed.
DisorderSpec sample_disorder(double strength, int bond_count,
                             std::uint64_t seed);

// Returns the chain with couplings[j] += deltas[j]; throws if any resulting
// bond would be negative (disorder is rejected, not clamped).
HoppingChain apply_disorder(const HoppingChain& chain,
                            const DisorderSpec& spec);

// Unit amplitude on site 1 (array index 0), zero elsewhere.
StateVector edge_state(int sites);

BlochVector bloch_vector(double j_intra, double j_inter, double k);

// Discretized winding of d(k) around the origin over k in [0, 2*pi).
// Returns boundary when |j_intra - j_inter| <= 1e-9 * max(j_intra, j_inter).
// Throws when both couplings are zero or k_samples < 8.
Winding winding_number(double j_intra, double j_inter, int k_samples = 1024);

// Dense row-major sites x sites matrix of the chain (zero diagonal,
// symmetric off-diagonals).  Mostly for tests and small-system checks.
std::vector<double> dense_hamiltonian(const HoppingChain& chain);

double norm(const StateVector& psi);
void normalize(StateVector& psi);

}  // namespace dpt
