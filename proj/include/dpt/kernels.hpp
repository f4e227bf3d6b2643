#pragma once

#include <cstddef>
#include <string>

namespace dpt::kern {

// Runtime-dispatched inner loops shared by the spectral sums, the Loschmidt
// time series, the oscillator integrator, and the demodulator. Every kernel
// has a scalar reference implementation; on x86-64 an AVX2+FMA variant is
// compiled into a separate translation unit and selected at startup when the
// CPU supports it. The two sets are equivalence-tested against each other.
struct Kernels {
  const char* name;

  // y_re[i] += a_re*x[i]; y_im[i] += a_im*x[i]
  void (*axpy_cplx)(double a_re, double a_im, const double* x,
                    double* y_re, double* y_im, std::size_t n);

  double (*dot)(const double* a, const double* b, std::size_t n);

  double (*sum)(const double* x, std::size_t n);

  // Advance unit phasors one grid step and accumulate the weighted sum:
  //   (c_re,c_im)[i] *= (r_re,r_im)[i]
  //   acc += sum_i w[i] * (c_re,c_im)[i]
  void (*rotate_accum)(double* c_re, double* c_im,
                       const double* r_re, const double* r_im,
                       const double* w, std::size_t n,
                       double* acc_re, double* acc_im);

  // Coupling kick for a nearest-neighbour bank. zg is ghost-padded: site i
  // lives at zg[i+1], zg[0] = zg[n+1] = 0. L has n+1 entries where L[b] is
  // the active bond value between zg[b] and zg[b+1] (so L[0] = L[n] = 0).
  //   v[i] += scale*minv[i]*( L[i+1]*(zg[i+2]-zg[i+1]) + L[i]*(zg[i]-zg[i+1]) )
  void (*bond_kick)(double* v, const double* zg, const double* L,
                    const double* minv, double scale, std::size_t n);

  // Per-oscillator linear update: (z,v)[i] <- (a*z + b*v, c*z + d*v)[i]
  void (*drift2x2)(double* z, double* v, const double* a, const double* b,
                   const double* c, const double* d, std::size_t n);

  // y_re[i] = x[i]*c_re[i]; y_im[i] = x[i]*c_im[i]
  void (*mul_real_cplx)(const double* x, const double* c_re,
                        const double* c_im, double* y_re, double* y_im,
                        std::size_t n);
};

const Kernels& scalar_kernels();

// Null when this build or this CPU cannot run AVX2+FMA.
const Kernels* avx2_kernels();

// Best available set, chosen once at startup (overridable via select()).
const Kernels& active();

// Force a specific set by name ("scalar", "avx2"); returns false when the
// requested set is unavailable. Intended for tests and benchmarks.
bool select(const std::string& name);

}  // namespace dpt::kern
