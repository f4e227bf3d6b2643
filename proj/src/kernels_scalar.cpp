#include "dpt/kernels.hpp"

namespace dpt::kern {
namespace {

void axpy_cplx_scalar(double a_re, double a_im, const double* x,
                      double* y_re, double* y_im, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y_re[i] += a_re * x[i];
    y_im[i] += a_im * x[i];
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

void rotate_accum_scalar(double* c_re, double* c_im, const double* r_re,
                         const double* r_im, const double* w, std::size_t n,
                         double* acc_re, double* acc_im) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cr = c_re[i], ci = c_im[i];
    const double nr = cr * r_re[i] - ci * r_im[i];
    const double ni = cr * r_im[i] + ci * r_re[i];
    c_re[i] = nr;
    c_im[i] = ni;
    sr += w[i] * nr;
    si += w[i] * ni;
  }
  *acc_re += sr;
  *acc_im += si;
}

void bond_kick_scalar(double* v, const double* zg, const double* L,
                      const double* minv, double scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double zi = zg[i + 1];
    const double f = L[i + 1] * (zg[i + 2] - zi) + L[i] * (zg[i] - zi);
    v[i] += scale * minv[i] * f;
  }
}

void drift2x2_scalar(double* z, double* v, const double* a, const double* b,
                     const double* c, const double* d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z[i], vi = v[i];
    z[i] = a[i] * zi + b[i] * vi;
    v[i] = c[i] * zi + d[i] * vi;
  }
}

void mul_real_cplx_scalar(const double* x, const double* c_re,
                          const double* c_im, double* y_re, double* y_im,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y_re[i] = x[i] * c_re[i];
    y_im[i] = x[i] * c_im[i];
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {
      "scalar",         axpy_cplx_scalar, dot_scalar,
      sum_scalar,       rotate_accum_scalar, bond_kick_scalar,
      drift2x2_scalar,  mul_real_cplx_scalar,
  };
  return k;
}

}  // namespace dpt::kern
