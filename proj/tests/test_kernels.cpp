#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dpt/kernels.hpp"

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng,
                               double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

const std::vector<std::size_t> kLengths = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 129};

}  // namespace

TEST_CASE("axpy_cplx_matches_reference_loop") {
  std::mt19937_64 rng(11);
  const auto& k = dpt::kern::scalar_kernels();
  for (std::size_t n : kLengths) {
    auto x = random_vec(n, rng);
    auto yr = random_vec(n, rng);
    auto yi = random_vec(n, rng);
    auto yr2 = yr, yi2 = yi;
    const double ar = 0.37, ai = -1.25;
    k.axpy_cplx(ar, ai, x.data(), yr.data(), yi.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      yr2[i] += ar * x[i];
      yi2[i] += ai * x[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(yr[i] == doctest::Approx(yr2[i]).epsilon(1e-14));
      CHECK(yi[i] == doctest::Approx(yi2[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("dot_and_sum_match_reference") {
  std::mt19937_64 rng(12);
  const auto& k = dpt::kern::scalar_kernels();
  for (std::size_t n : kLengths) {
    auto a = random_vec(n, rng);
    auto b = random_vec(n, rng);
    double d_ref = 0.0, s_ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d_ref += a[i] * b[i];
      s_ref += a[i];
    }
    CHECK(k.dot(a.data(), b.data(), n) == doctest::Approx(d_ref).epsilon(1e-12));
    CHECK(k.sum(a.data(), n) == doctest::Approx(s_ref).epsilon(1e-12));
  }
}

TEST_CASE("rotate_accum_steps_phasors_and_accumulates") {
  std::mt19937_64 rng(13);
  const auto& k = dpt::kern::scalar_kernels();
  for (std::size_t n : {std::size_t{1}, std::size_t{5}, std::size_t{16}, std::size_t{33}}) {
    std::vector<double> cr(n), ci(n), rr(n), ri(n);
    auto w = random_vec(n, rng, 0.1, 2.0);
    std::vector<std::complex<double>> c_ref(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double phi0 = 2.0 * i + 0.3;
      const double dphi = 0.01 * (i + 1);
      cr[i] = std::cos(phi0);
      ci[i] = std::sin(phi0);
      rr[i] = std::cos(dphi);
      ri[i] = std::sin(dphi);
      c_ref[i] = {cr[i], ci[i]};
    }
    double acc_re = 0.25, acc_im = -0.5;
    double ref_re = acc_re, ref_im = acc_im;
    for (int step = 0; step < 7; ++step) {
      k.rotate_accum(cr.data(), ci.data(), rr.data(), ri.data(), w.data(), n,
                     &acc_re, &acc_im);
      for (std::size_t i = 0; i < n; ++i) {
        c_ref[i] *= std::complex<double>(rr[i], ri[i]);
        ref_re += w[i] * c_ref[i].real();
        ref_im += w[i] * c_ref[i].imag();
      }
    }
    CHECK(acc_re == doctest::Approx(ref_re).epsilon(1e-12));
    CHECK(acc_im == doctest::Approx(ref_im).epsilon(1e-12));
    // phasors stay unit magnitude
    for (std::size_t i = 0; i < n; ++i)
      CHECK(cr[i] * cr[i] + ci[i] * ci[i] == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("bond_kick_matches_direct_neighbour_formula") {
  std::mt19937_64 rng(14);
  const auto& k = dpt::kern::scalar_kernels();
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{7}, std::size_t{8}, std::size_t{19}}) {
    std::vector<double> zg(n + 2, 0.0);
    for (std::size_t i = 1; i <= n; ++i) zg[i] = std::sin(0.7 * i);
    std::vector<double> big_l(n + 1, 0.0);
    for (std::size_t b = 1; b < n; ++b) big_l[b] = 0.3 * b;  // L[0] = L[n] = 0
    auto minv = random_vec(n, rng, 0.5, 2.0);
    auto v = random_vec(n, rng);
    auto v_ref = v;
    const double scale = 0.125;
    k.bond_kick(v.data(), zg.data(), big_l.data(), minv.data(), scale, n);
    for (std::size_t i = 0; i < n; ++i) {
      v_ref[i] += scale * minv[i] *
                  (big_l[i + 1] * (zg[i + 2] - zg[i + 1]) +
                   big_l[i] * (zg[i] - zg[i + 1]));
    }
    for (std::size_t i = 0; i < n; ++i)
      CHECK(v[i] == doctest::Approx(v_ref[i]).epsilon(1e-14));
  }
}

TEST_CASE("drift2x2_applies_per_oscillator_linear_map") {
  std::mt19937_64 rng(15);
  const auto& k = dpt::kern::scalar_kernels();
  for (std::size_t n : {std::size_t{1}, std::size_t{6}, std::size_t{16}, std::size_t{21}}) {
    auto z = random_vec(n, rng);
    auto v = random_vec(n, rng);
    auto a = random_vec(n, rng);
    auto b = random_vec(n, rng);
    auto c = random_vec(n, rng);
    auto d = random_vec(n, rng);
    auto z_ref = z, v_ref = v;
    k.drift2x2(z.data(), v.data(), a.data(), b.data(), c.data(), d.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const double zi = z_ref[i], vi = v_ref[i];
      z_ref[i] = a[i] * zi + b[i] * vi;
      v_ref[i] = c[i] * zi + d[i] * vi;
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(z[i] == doctest::Approx(z_ref[i]).epsilon(1e-14));
      CHECK(v[i] == doctest::Approx(v_ref[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("mul_real_cplx_matches_reference") {
  std::mt19937_64 rng(16);
  const auto& k = dpt::kern::scalar_kernels();
  for (std::size_t n : kLengths) {
    auto x = random_vec(n, rng);
    auto cr = random_vec(n, rng);
    auto ci = random_vec(n, rng);
    std::vector<double> yr(n, -9.0), yi(n, -9.0);
    k.mul_real_cplx(x.data(), cr.data(), ci.data(), yr.data(), yi.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(yr[i] == doctest::Approx(x[i] * cr[i]).epsilon(1e-14));
      CHECK(yi[i] == doctest::Approx(x[i] * ci[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("simd_variant_agrees_with_scalar_reference") {
  const auto* simd = dpt::kern::avx2_kernels();
  if (simd == nullptr) {
    MESSAGE("no SIMD kernel set available on this build/CPU; skipping");
    return;
  }
  const auto& ref = dpt::kern::scalar_kernels();
  std::mt19937_64 rng(17);
  for (std::size_t n : kLengths) {
    auto x = random_vec(n, rng);
    auto y = random_vec(n, rng);

    // dot / sum: allow reassociation differences only
    CHECK(simd->dot(x.data(), y.data(), n) ==
          doctest::Approx(ref.dot(x.data(), y.data(), n)).epsilon(1e-13));
    CHECK(simd->sum(x.data(), n) ==
          doctest::Approx(ref.sum(x.data(), n)).epsilon(1e-13));

    // axpy
    auto yr1 = y, yi1 = x, yr2 = y, yi2 = x;
    ref.axpy_cplx(0.77, -0.11, x.data(), yr1.data(), yi1.data(), n);
    simd->axpy_cplx(0.77, -0.11, x.data(), yr2.data(), yi2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(yr1[i] == doctest::Approx(yr2[i]).epsilon(1e-14));
      CHECK(yi1[i] == doctest::Approx(yi2[i]).epsilon(1e-14));
    }

    // mul_real_cplx
    std::vector<double> a1(n), b1(n), a2(n), b2(n);
    ref.mul_real_cplx(x.data(), y.data(), x.data(), a1.data(), b1.data(), n);
    simd->mul_real_cplx(x.data(), y.data(), x.data(), a2.data(), b2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(a1[i] == doctest::Approx(a2[i]).epsilon(1e-14));
      CHECK(b1[i] == doctest::Approx(b2[i]).epsilon(1e-14));
    }

    // drift2x2
    auto z1 = x, v1 = y, z2 = x, v2 = y;
    auto ca = random_vec(n, rng), cb = random_vec(n, rng);
    auto cc = random_vec(n, rng), cd = random_vec(n, rng);
    ref.drift2x2(z1.data(), v1.data(), ca.data(), cb.data(), cc.data(), cd.data(), n);
    simd->drift2x2(z2.data(), v2.data(), ca.data(), cb.data(), cc.data(), cd.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(z1[i] == doctest::Approx(z2[i]).epsilon(1e-14));
      CHECK(v1[i] == doctest::Approx(v2[i]).epsilon(1e-14));
    }

    // bond_kick
    if (n >= 1) {
      std::vector<double> zg(n + 2, 0.0);
      for (std::size_t i = 1; i <= n; ++i) zg[i] = std::cos(1.1 * i);
      std::vector<double> big_l(n + 1, 0.0);
      for (std::size_t b = 1; b < n; ++b) big_l[b] = 0.2 * b + 0.05;
      auto minv = random_vec(n, rng, 0.5, 2.0);
      auto k1 = y, k2 = y;
      ref.bond_kick(k1.data(), zg.data(), big_l.data(), minv.data(), 0.01, n);
      simd->bond_kick(k2.data(), zg.data(), big_l.data(), minv.data(), 0.01, n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(k1[i] == doctest::Approx(k2[i]).epsilon(1e-14));
    }

    // rotate_accum
    if (n >= 1) {
      std::vector<double> cr1(n), ci1(n), cr2(n), ci2(n), rr(n), ri(n);
      auto w = random_vec(n, rng, 0.1, 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        cr1[i] = cr2[i] = std::cos(0.3 * i);
        ci1[i] = ci2[i] = std::sin(0.3 * i);
        rr[i] = std::cos(0.002 * (i + 1));
        ri[i] = std::sin(0.002 * (i + 1));
      }
      double ar1 = 0, ai1 = 0, ar2 = 0, ai2 = 0;
      for (int s = 0; s < 5; ++s) {
        ref.rotate_accum(cr1.data(), ci1.data(), rr.data(), ri.data(), w.data(), n, &ar1, &ai1);
        simd->rotate_accum(cr2.data(), ci2.data(), rr.data(), ri.data(), w.data(), n, &ar2, &ai2);
      }
      CHECK(ar1 == doctest::Approx(ar2).epsilon(1e-13));
      CHECK(ai1 == doctest::Approx(ai2).epsilon(1e-13));
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(cr1[i] == doctest::Approx(cr2[i]).epsilon(1e-13));
        CHECK(ci1[i] == doctest::Approx(ci2[i]).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("kernel_selection_by_name") {
  const std::string before = dpt::kern::active().name;

  CHECK(dpt::kern::select("scalar"));
  CHECK(std::string(dpt::kern::active().name) == "scalar");

  const bool have_simd = dpt::kern::avx2_kernels() != nullptr;
  CHECK(dpt::kern::select("avx2") == have_simd);
  if (have_simd) CHECK(std::string(dpt::kern::active().name) == "avx2");

  CHECK_FALSE(dpt::kern::select("no-such-kernel-set"));

  dpt::kern::select(before);
  CHECK(std::string(dpt::kern::active().name) == before);
}
