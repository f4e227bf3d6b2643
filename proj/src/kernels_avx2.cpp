#include "dpt/kernels.hpp"

// Compiled with -mavx2 -mfma when the toolchain supports it; otherwise this
// TU provides a null set and the dispatcher stays on the scalar kernels.
#if defined(__AVX2__) && defined(__FMA__) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

namespace dpt::kern {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void axpy_cplx_avx2(double a_re, double a_im, const double* x, double* y_re,
                    double* y_im, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a_re);
  const __m256d ai = _mm256_set1_pd(a_im);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y_re + i, _mm256_fmadd_pd(ar, xv, _mm256_loadu_pd(y_re + i)));
    _mm256_storeu_pd(y_im + i, _mm256_fmadd_pd(ai, xv, _mm256_loadu_pd(y_im + i)));
  }
  for (; i < n; ++i) {
    y_re[i] += a_re * x[i];
    y_im[i] += a_im * x[i];
  }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

void rotate_accum_avx2(double* c_re, double* c_im, const double* r_re,
                       const double* r_im, const double* w, std::size_t n,
                       double* acc_re, double* acc_im) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cr = _mm256_loadu_pd(c_re + i);
    const __m256d ci = _mm256_loadu_pd(c_im + i);
    const __m256d rr = _mm256_loadu_pd(r_re + i);
    const __m256d ri = _mm256_loadu_pd(r_im + i);
    const __m256d nr = _mm256_fmsub_pd(cr, rr, _mm256_mul_pd(ci, ri));
    const __m256d ni = _mm256_fmadd_pd(cr, ri, _mm256_mul_pd(ci, rr));
    _mm256_storeu_pd(c_re + i, nr);
    _mm256_storeu_pd(c_im + i, ni);
    const __m256d wv = _mm256_loadu_pd(w + i);
    sr = _mm256_fmadd_pd(wv, nr, sr);
    si = _mm256_fmadd_pd(wv, ni, si);
  }
  double tr = hsum(sr), ti = hsum(si);
  for (; i < n; ++i) {
    const double cr = c_re[i], ci = c_im[i];
    const double nr = cr * r_re[i] - ci * r_im[i];
    const double ni = cr * r_im[i] + ci * r_re[i];
    c_re[i] = nr;
    c_im[i] = ni;
    tr += w[i] * nr;
    ti += w[i] * ni;
  }
  *acc_re += tr;
  *acc_im += ti;
}

void bond_kick_avx2(double* v, const double* zg, const double* L,
                    const double* minv, double scale, std::size_t n) {
  const __m256d sc = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d zi = _mm256_loadu_pd(zg + i + 1);
    const __m256d zr = _mm256_loadu_pd(zg + i + 2);
    const __m256d zl = _mm256_loadu_pd(zg + i);
    const __m256d lr = _mm256_loadu_pd(L + i + 1);
    const __m256d ll = _mm256_loadu_pd(L + i);
    const __m256d f = _mm256_fmadd_pd(lr, _mm256_sub_pd(zr, zi),
                                      _mm256_mul_pd(ll, _mm256_sub_pd(zl, zi)));
    const __m256d dv = _mm256_mul_pd(_mm256_mul_pd(sc, _mm256_loadu_pd(minv + i)), f);
    _mm256_storeu_pd(v + i, _mm256_add_pd(_mm256_loadu_pd(v + i), dv));
  }
  for (; i < n; ++i) {
    const double zi = zg[i + 1];
    const double f = L[i + 1] * (zg[i + 2] - zi) + L[i] * (zg[i] - zi);
    v[i] += scale * minv[i] * f;
  }
}

void drift2x2_avx2(double* z, double* v, const double* a, const double* b,
                   const double* c, const double* d, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d zi = _mm256_loadu_pd(z + i);
    const __m256d vi = _mm256_loadu_pd(v + i);
    const __m256d nz = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), zi,
                                       _mm256_mul_pd(_mm256_loadu_pd(b + i), vi));
    const __m256d nv = _mm256_fmadd_pd(_mm256_loadu_pd(c + i), zi,
                                       _mm256_mul_pd(_mm256_loadu_pd(d + i), vi));
    _mm256_storeu_pd(z + i, nz);
    _mm256_storeu_pd(v + i, nv);
  }
  for (; i < n; ++i) {
    const double zi = z[i], vi = v[i];
    z[i] = a[i] * zi + b[i] * vi;
    v[i] = c[i] * zi + d[i] * vi;
  }
}

void mul_real_cplx_avx2(const double* x, const double* c_re,
                        const double* c_im, double* y_re, double* y_im,
                        std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y_re + i, _mm256_mul_pd(xv, _mm256_loadu_pd(c_re + i)));
    _mm256_storeu_pd(y_im + i, _mm256_mul_pd(xv, _mm256_loadu_pd(c_im + i)));
  }
  for (; i < n; ++i) {
    y_re[i] = x[i] * c_re[i];
    y_im[i] = x[i] * c_im[i];
  }
}

}  // namespace

const Kernels* avx2_kernels() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
    return nullptr;
  }
  static const Kernels k = {
      "avx2",         axpy_cplx_avx2, dot_avx2,
      sum_avx2,       rotate_accum_avx2, bond_kick_avx2,
      drift2x2_avx2,  mul_real_cplx_avx2,
  };
  return &k;
}

}  // namespace dpt::kern

#else

namespace dpt::kern {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace dpt::kern

#endif
