#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dpt/lattice.hpp"

using dpt::HoppingChain;
using dpt::Winding;

TEST_CASE("build_ssh_alternating_pattern") {
  const HoppingChain c = dpt::build_ssh(4, 60.0, 20.0);
  CHECK(c.sites == 8);
  CHECK(c.unit_cells == 4);
  const std::vector<double> want = {60, 20, 60, 20, 60, 20, 60};
  REQUIRE(c.couplings.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(c.couplings[i] == want[i]);

  const HoppingChain d = dpt::build_ssh(4, 20.0, 60.0);
  const std::vector<double> want2 = {20, 60, 20, 60, 20, 60, 20};
  for (std::size_t i = 0; i < want2.size(); ++i)
    CHECK(d.couplings[i] == want2[i]);
}

TEST_CASE("build_ssh_single_cell_has_no_intercell_bond") {
  const HoppingChain c = dpt::build_ssh(1, 5.0, 123.0);
  CHECK(c.sites == 2);
  REQUIRE(c.couplings.size() == 1);
  CHECK(c.couplings[0] == 5.0);
}

TEST_CASE("build_ssh_rejects_bad_arguments") {
  CHECK_THROWS_AS(dpt::build_ssh(0, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(dpt::build_ssh(4, -1, 10), std::invalid_argument);
  CHECK_THROWS_AS(dpt::build_ssh(4, 10, -1), std::invalid_argument);
}

TEST_CASE("make_chain_validates_shape_and_sign") {
  const HoppingChain c = dpt::make_chain({1.0, 2.0, 3.0});
  CHECK(c.sites == 4);
  CHECK(c.unit_cells == 2);
  CHECK_THROWS_AS(dpt::make_chain({1.0, 2.0}), std::invalid_argument);  // odd site count
  CHECK_THROWS_AS(dpt::make_chain({}), std::invalid_argument);
  CHECK_THROWS_AS(dpt::make_chain({1.0, -0.5, 3.0}), std::invalid_argument);
}

TEST_CASE("sample_disorder_bounds_and_determinism") {
  const auto zero = dpt::sample_disorder(0.0, 7, 42);
  REQUIRE(zero.deltas.size() == 7);
  for (double d : zero.deltas) CHECK(d == 0.0);

  const auto a = dpt::sample_disorder(5.0, 7, 42);
  const auto b = dpt::sample_disorder(5.0, 7, 42);
  const auto c = dpt::sample_disorder(5.0, 7, 43);
  REQUIRE(a.deltas.size() == 7);
  bool all_equal_ab = true, any_diff_ac = false;
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(std::abs(a.deltas[i]) <= 5.0);
    all_equal_ab = all_equal_ab && (a.deltas[i] == b.deltas[i]);
    any_diff_ac = any_diff_ac || (a.deltas[i] != c.deltas[i]);
  }
  CHECK(all_equal_ab);
  CHECK(any_diff_ac);
  CHECK(a.strength == 5.0);
  CHECK(a.seed == 42);

  const auto wide = dpt::sample_disorder(15.0, 1000, 7);
  for (double d : wide.deltas) CHECK(std::abs(d) <= 15.0);
}

TEST_CASE("apply_disorder_adds_offsets_per_bond") {
  const HoppingChain base = dpt::build_ssh(4, 60.0, 20.0);
  dpt::DisorderSpec spec;
  spec.strength = 5.0;
  spec.deltas = {-5, 1, 1, 5, 3, -2, 0};
  const HoppingChain got = dpt::apply_disorder(base, spec);
  const std::vector<double> want = {55, 21, 61, 25, 63, 18, 60};
  REQUIRE(got.couplings.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(got.couplings[i] == want[i]);

  dpt::DisorderSpec wide;
  wide.strength = 15.0;
  wide.deltas = {-10, -4, 4, 9, -13, 13, 9};
  const HoppingChain got2 = dpt::apply_disorder(base, wide);
  const std::vector<double> want2 = {50, 16, 64, 29, 47, 33, 69};
  for (std::size_t i = 0; i < want2.size(); ++i)
    CHECK(got2.couplings[i] == want2[i]);
}

TEST_CASE("apply_disorder_identity_and_involution") {
  const HoppingChain base = dpt::build_ssh(6, 33.0, 11.0);
  dpt::DisorderSpec zero;
  zero.deltas.assign(base.couplings.size(), 0.0);
  const HoppingChain same = dpt::apply_disorder(base, zero);
  for (std::size_t i = 0; i < base.couplings.size(); ++i)
    CHECK(same.couplings[i] == base.couplings[i]);

  // apply, then apply the negated spec: bit-exact round trip
  const auto spec = dpt::sample_disorder(8.0, static_cast<int>(base.couplings.size()), 5);
  const HoppingChain forward = dpt::apply_disorder(base, spec);
  dpt::DisorderSpec negated = spec;
  for (double& d : negated.deltas) d = -d;
  const HoppingChain back = dpt::apply_disorder(forward, negated);
  for (std::size_t i = 0; i < base.couplings.size(); ++i)
    CHECK(back.couplings[i] == base.couplings[i]);
}

TEST_CASE("apply_disorder_rejects_negative_bonds") {
  const HoppingChain base = dpt::build_ssh(2, 10.0, 30.0);
  dpt::DisorderSpec spec;
  spec.deltas = {-11.0, 0.0, 0.0};
  CHECK_THROWS(dpt::apply_disorder(base, spec));

  dpt::DisorderSpec wrong_len;
  wrong_len.deltas = {0.0};
  CHECK_THROWS(dpt::apply_disorder(base, wrong_len));
}

TEST_CASE("edge_state_is_unit_basis_vector") {
  const auto psi = dpt::edge_state(8);
  REQUIRE(psi.size() == 8);
  CHECK(psi[0] == std::complex<double>(1.0, 0.0));
  for (int i = 1; i < 8; ++i) CHECK(std::abs(psi[i]) == 0.0);
  CHECK(dpt::norm(psi) == doctest::Approx(1.0).epsilon(1e-15));

  const auto two = dpt::edge_state(2);
  CHECK(two[0] == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(two[1]) == 0.0);
}

TEST_CASE("chiral_operator_alternates_and_flips_hamiltonian") {
  const auto gamma = dpt::ChiralOperator::for_sites(6);
  REQUIRE(gamma.diagonal.size() == 6);
  for (int i = 0; i < 6; ++i)
    CHECK(gamma.diagonal[i] == ((i % 2 == 0) ? 1.0 : -1.0));  // site 1 (index 0) is odd

  // Gamma H Gamma = -H exactly, clean and disordered
  const HoppingChain clean = dpt::build_ssh(3, 60.0, 20.0);
  const auto spec = dpt::sample_disorder(10.0, 5, 99);
  for (const HoppingChain& chain : {clean, dpt::apply_disorder(clean, spec)}) {
    const auto h = dpt::dense_hamiltonian(chain);
    const int n = chain.sites;
    const auto g = dpt::ChiralOperator::for_sites(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double conj = g.diagonal[i] * h[i * n + j] * g.diagonal[j];
        CHECK(conj == -h[i * n + j]);
      }
  }
}

TEST_CASE("dense_hamiltonian_is_symmetric_tridiagonal_zero_diagonal") {
  const HoppingChain chain = dpt::make_chain({3.0, 7.0, 2.0});
  const auto h = dpt::dense_hamiltonian(chain);
  const int n = 4;
  REQUIRE(h.size() == static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    CHECK(h[i * n + i] == 0.0);
    for (int j = 0; j < n; ++j) {
      CHECK(h[i * n + j] == h[j * n + i]);
      if (std::abs(i - j) > 1) CHECK(h[i * n + j] == 0.0);
    }
  }
  CHECK(h[0 * n + 1] == 3.0);
  CHECK(h[1 * n + 2] == 7.0);
  CHECK(h[2 * n + 3] == 2.0);
}

TEST_CASE("bloch_vector_components") {
  const double k = 1.234;
  const auto d = dpt::bloch_vector(60.0, 20.0, k);
  CHECK(d.k == k);
  CHECK(d.dx == doctest::Approx(60.0 + 20.0 * std::cos(k)).epsilon(1e-15));
  CHECK(d.dy == doctest::Approx(20.0 * std::sin(k)).epsilon(1e-15));
}

TEST_CASE("winding_number_classifies_phases") {
  CHECK(dpt::winding_number(60.0, 20.0) == Winding::trivial);
  CHECK(dpt::winding_number(20.0, 60.0) == Winding::topological);
  CHECK(dpt::winding_number(40.0, 40.0) == Winding::boundary);
  CHECK_THROWS(dpt::winding_number(0.0, 0.0));
  CHECK_THROWS(dpt::winding_number(60.0, 20.0, 4));
}

TEST_CASE("winding_number_scale_invariance") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> coupling(1.0, 100.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double ja = coupling(rng);
    const double jb = coupling(rng);
    if (std::abs(ja - jb) < 1e-6 * std::max(ja, jb)) continue;
    const double c = scale(rng);
    CHECK(dpt::winding_number(ja, jb) == dpt::winding_number(c * ja, c * jb));
    ++checked;
  }
  CHECK(checked > 90);
}

TEST_CASE("norm_and_normalize") {
  dpt::StateVector psi = {{3.0, 0.0}, {0.0, 4.0}};
  CHECK(dpt::norm(psi) == doctest::Approx(5.0).epsilon(1e-15));
  dpt::normalize(psi);
  CHECK(dpt::norm(psi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(psi[0].real() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(psi[1].imag() == doctest::Approx(0.8).epsilon(1e-15));
}
