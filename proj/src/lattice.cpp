#include "dpt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace dpt {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

ChiralOperator ChiralOperator::for_sites(int sites) {
  if (sites < 1) throw std::invalid_argument("chiral operator needs sites >= 1");
  ChiralOperator g;
  g.diagonal.resize(static_cast<std::size_t>(sites));
  for (int j = 0; j < sites; ++j) {
    // site j+1 in 1-indexed convention: odd sites +1, even sites -1
    g.diagonal[static_cast<std::size_t>(j)] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  return g;
}

HoppingChain make_chain(std::vector<double> couplings) {
  const std::size_t bonds = couplings.size();
  if (bonds == 0 || bonds % 2 == 0) {
    throw std::invalid_argument(
        "chain needs an odd number of bonds (even site count), got " +
        std::to_string(bonds));
  }
  for (std::size_t j = 0; j < bonds; ++j) {
    if (!(couplings[j] >= 0.0)) {
      throw std::invalid_argument("bond " + std::to_string(j + 1) +
                                  " is negative or NaN");
    }
  }
  HoppingChain c;
  c.sites = static_cast<int>(bonds + 1);
  c.unit_cells = c.sites / 2;
  c.couplings = std::move(couplings);
  return c;
}

HoppingChain build_ssh(int unit_cells, double j_intra, double j_inter) {
  if (unit_cells < 1) throw std::invalid_argument("unit_cells must be >= 1");
  if (!(j_intra >= 0.0) || !(j_inter >= 0.0)) {
    throw std::invalid_argument("couplings must be >= 0");
  }
  std::vector<double> couplings(static_cast<std::size_t>(2 * unit_cells - 1));
  for (std::size_t j = 0; j < couplings.size(); ++j) {
    couplings[j] = (j % 2 == 0) ? j_intra : j_inter;
  }
  return make_chain(std::move(couplings));
}

DisorderSpec sample_disorder(double strength, int bond_count,
                             std::uint64_t seed) {
  if (!(strength >= 0.0)) throw std::invalid_argument("strength must be >= 0");
  if (bond_count < 0) throw std::invalid_argument("bond_count must be >= 0");
  DisorderSpec spec;
  spec.strength = strength;
  spec.seed = seed;
  spec.deltas.resize(static_cast<std::size_t>(bond_count));
  std::mt19937_64 rng(seed);
  for (auto& d : spec.deltas) {
    // Map the top 53 bits to [0,1); bit-reproducible everywhere, unlike
    // std::uniform_real_distribution which is implementation-defined.
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;
    d = strength * (2.0 * u - 1.0);
  }
  return spec;
}

HoppingChain apply_disorder(const HoppingChain& chain,
                            const DisorderSpec& spec) {
  if (spec.deltas.size() != chain.couplings.size()) {
    throw std::invalid_argument("disorder has " +
                                std::to_string(spec.deltas.size()) +
                                " offsets for " +
                                std::to_string(chain.couplings.size()) +
                                " bonds");
  }
  std::vector<double> couplings(chain.couplings.size());
  for (std::size_t j = 0; j < couplings.size(); ++j) {
    const double v = chain.couplings[j] + spec.deltas[j];
    if (!(v >= 0.0)) {
      throw std::invalid_argument("disorder drives bond " +
                                  std::to_string(j + 1) + " negative (" +
                                  std::to_string(v) + " Hz)");
    }
    couplings[j] = v;
  }
  return make_chain(std::move(couplings));
}

StateVector edge_state(int sites) {
  if (sites < 1) throw std::invalid_argument("edge_state needs sites >= 1");
  StateVector psi(static_cast<std::size_t>(sites),
                  std::complex<double>(0.0, 0.0));
  psi[0] = 1.0;
  return psi;
}

BlochVector bloch_vector(double j_intra, double j_inter, double k) {
  BlochVector d;
  d.k = k;
  d.dx = j_intra + j_inter * std::cos(k);
  d.dy = j_inter * std::sin(k);
  return d;
}

Winding winding_number(double j_intra, double j_inter, int k_samples) {
  if (k_samples < 8) throw std::invalid_argument("k_samples must be >= 8");
  if (!(j_intra >= 0.0) || !(j_inter >= 0.0)) {
    throw std::invalid_argument("couplings must be >= 0");
  }
  const double mx = std::max(j_intra, j_inter);
  if (mx == 0.0) {
    throw std::invalid_argument("d(k) vanishes identically for zero couplings");
  }
  if (std::abs(j_intra - j_inter) <= 1e-9 * mx) return Winding::boundary;

  // Accumulate the angle swept by d(k) between consecutive k samples; each
  // increment is in (-pi, pi) by construction, so the discretized total is
  // exact for any closed curve resolved by the grid.
  double total = 0.0;
  BlochVector prev = bloch_vector(j_intra, j_inter, 0.0);
  for (int i = 1; i <= k_samples; ++i) {
    const double k = 2.0 * kPi * static_cast<double>(i) /
                     static_cast<double>(k_samples);
    const BlochVector cur = bloch_vector(j_intra, j_inter, k);
    const double cross = prev.dx * cur.dy - prev.dy * cur.dx;
    const double dot = prev.dx * cur.dx + prev.dy * cur.dy;
    total += std::atan2(cross, dot);
    prev = cur;
  }
  const long w = std::lround(total / (2.0 * kPi));
  return (w == 0) ? Winding::trivial : Winding::topological;
}

std::vector<double> dense_hamiltonian(const HoppingChain& chain) {
  const std::size_t n = static_cast<std::size_t>(chain.sites);
  std::vector<double> h(n * n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    h[j * n + (j + 1)] = chain.couplings[j];
    h[(j + 1) * n + j] = chain.couplings[j];
  }
  return h;
}

double norm(const StateVector& psi) {
  double s = 0.0;
  for (const auto& a : psi) s += std::norm(a);
  return std::sqrt(s);
}

void normalize(StateVector& psi) {
  const double n = norm(psi);
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  for (auto& a : psi) a /= n;
}

}  // namespace dpt
