#include "dpt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dpt/kernels.hpp"

namespace dpt {

namespace {

inline double sign_like(double a, double b) {
  return (b >= 0.0) ? std::abs(a) : -std::abs(a);
}

// Implicit-shift QL for a symmetric tridiagonal matrix (diagonal d,
// subdiagonal e with e[i] between rows i and i+1).  v is an n x n row-major
// matrix of accumulated rotations; row i ends up as the eigenvector of d[i].
// Rotations act on *rows* of v so the inner loop is contiguous.
void tqli(std::vector<double>& d, std::vector<double>& e, int n,
          std::vector<double>& v) {
  const double eps = std::numeric_limits<double>::epsilon();
  if (n <= 1) return;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) {
          throw std::runtime_error("tridiagonal QL failed to converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          double* vi = v.data() + static_cast<std::size_t>(i) * n;
          double* vj = vi + n;
          for (int k = 0; k < n; ++k) {
            f = vj[k];
            vj[k] = s * vi[k] + c * f;
            vi[k] = c * vi[k] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Cyclic Jacobi diagonalization for the small dense symmetric matrices that
// arise inside degenerate clusters.  a is n x n row-major (destroyed);
// returns eigenvalues in w and row-contiguous eigenvectors in q.
void jacobi_small(std::vector<double> a, int n, std::vector<double>& w,
                  std::vector<double>& q) {
  q.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i) * n + i] = 1.0;
  auto at = [&](int r, int c) -> double& {
    return a[static_cast<std::size_t>(r) * n + c];
  };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) off += at(r, c) * at(r, c);
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apq = at(p, r);
        if (apq == 0.0) continue;
        const double theta = (at(r, r) - at(p, p)) / (2.0 * apq);
        const double t = sign_like(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akr = at(k, r);
          at(k, p) = c * akp - s * akr;
          at(k, r) = s * akp + c * akr;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), ark = at(r, k);
          at(p, k) = c * apk - s * ark;
          at(r, k) = s * apk + c * ark;
        }
        for (int k = 0; k < n; ++k) {
          const double qpk = q[static_cast<std::size_t>(p) * n + k];
          const double qrk = q[static_cast<std::size_t>(r) * n + k];
          q[static_cast<std::size_t>(p) * n + k] = c * qpk - s * qrk;
          q[static_cast<std::size_t>(r) * n + k] = s * qpk + c * qrk;
        }
      }
    }
  }
  w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = at(i, i);
}

void sign_fix(double* vec, int n) {
  int arg = 0;
  double best = std::abs(vec[0]);
  for (int j = 1; j < n; ++j) {
    const double m = std::abs(vec[j]);
    if (m > best) {
      best = m;
      arg = j;
    }
  }
  if (vec[arg] < 0.0) {
    for (int j = 0; j < n; ++j) vec[j] = -vec[j];
  }
}

void renormalize(double* vec, int n) {
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += vec[j] * vec[j];
  s = std::sqrt(s);
  if (s > 0.0) {
    for (int j = 0; j < n; ++j) vec[j] /= s;
  }
}

}  // namespace

EigenSystem eigendecompose(const HoppingChain& chain) {
  const int n = chain.sites;
  EigenSystem eig;
  eig.sites = n;
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);  // zero diagonal
  std::vector<double> e(chain.couplings);
  e.resize(static_cast<std::size_t>(n), 0.0);  // tqli wants n slots
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

  tqli(d, e, n, v);

  // Ascending sort by eigenvalue, permuting eigenvector rows along.
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return d[static_cast<std::size_t>(a)] < d[static_cast<std::size_t>(b)];
  });
  eig.eigenvalues.resize(static_cast<std::size_t>(n));
  eig.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    eig.eigenvalues[static_cast<std::size_t>(i)] =
        d[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    const double* src =
        v.data() + static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]) * n;
    std::copy(src, src + n, eig.vec(i));
  }

  double emax = 0.0;
  for (double ev : eig.eigenvalues) emax = std::max(emax, std::abs(ev));
  const double ctol = 1e-9 * emax;

  // Deterministic treatment of degenerate clusters: Gram-Schmidt, then
  // rotate to diagonalize the chiral operator within the cluster and order
  // by chirality expectation descending.
  const ChiralOperator gamma = ChiralOperator::for_sites(n);
  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n && eig.eigenvalues[static_cast<std::size_t>(hi)] -
                             eig.eigenvalues[static_cast<std::size_t>(hi - 1)] <=
                         ctol) {
      ++hi;
    }
    const int c = hi - lo;
    if (c > 1) {
      for (int a = 0; a < c; ++a) {
        double* va = eig.vec(lo + a);
        for (int b = 0; b < a; ++b) {
          const double* vb = eig.vec(lo + b);
          const double ov = kern::active().dot(va, vb, static_cast<std::size_t>(n));
          for (int j = 0; j < n; ++j) va[j] -= ov * vb[j];
        }
        renormalize(va, n);
      }
      // Cluster Gram matrix of Gamma; its eigenbasis is the deterministic
      // representative set (for zero-mode clusters it is the +-1 polarized
      // pair, for accidental same-sign degeneracies it is a no-op).
      std::vector<double> g(static_cast<std::size_t>(c) * c, 0.0);
      std::vector<double> tmp(static_cast<std::size_t>(n));
      for (int a = 0; a < c; ++a) {
        const double* va = eig.vec(lo + a);
        for (int j = 0; j < n; ++j)
          tmp[static_cast<std::size_t>(j)] =
              gamma.diagonal[static_cast<std::size_t>(j)] * va[j];
        for (int b = a; b < c; ++b) {
          const double ov = kern::active().dot(tmp.data(), eig.vec(lo + b),
                                               static_cast<std::size_t>(n));
          g[static_cast<std::size_t>(a) * c + b] = ov;
          g[static_cast<std::size_t>(b) * c + a] = ov;
        }
      }
      std::vector<double> gw, gq;
      jacobi_small(std::move(g), c, gw, gq);
      std::vector<int> gperm(static_cast<std::size_t>(c));
      std::iota(gperm.begin(), gperm.end(), 0);
      std::stable_sort(gperm.begin(), gperm.end(), [&](int a, int b) {
        return gw[static_cast<std::size_t>(a)] > gw[static_cast<std::size_t>(b)];
      });
      std::vector<double> rotated(static_cast<std::size_t>(c) * n, 0.0);
      for (int a = 0; a < c; ++a) {
        const int src = gperm[static_cast<std::size_t>(a)];
        double* out = rotated.data() + static_cast<std::size_t>(a) * n;
        for (int b = 0; b < c; ++b) {
          const double coef = gq[static_cast<std::size_t>(src) * c + b];
          const double* vb = eig.vec(lo + b);
          for (int j = 0; j < n; ++j) out[j] += coef * vb[j];
        }
        renormalize(out, n);
      }

      // The rotated vectors are superpositions within the cluster span and no
      // longer match the slot eigenvalues individually; carrying the old
      // values would leak the full cluster splitting into every spectral sum
      // (a chirality-polarized doublet member would pick up +-delta/2 instead
      // of the exact 0).  Reassign each vector its Rayleigh quotient with the
      // tridiagonal Hamiltonian, which is its best eigenvalue estimate and
      // stays inside the cluster spread.
      std::vector<double> rq(static_cast<std::size_t>(c), 0.0);
      for (int a = 0; a < c; ++a) {
        const double* va = rotated.data() + static_cast<std::size_t>(a) * n;
        double th = 0.0;
        for (int j = 0; j + 1 < n; ++j) {
          th += 2.0 * chain.couplings[static_cast<std::size_t>(j)] * va[j] *
                va[j + 1];
        }
        rq[static_cast<std::size_t>(a)] = th;
      }
      // Restore ascending eigenvalue order inside the cluster; the sort is
      // stable so exact ties keep the chirality-descending convention.
      std::vector<int> eorder(static_cast<std::size_t>(c));
      std::iota(eorder.begin(), eorder.end(), 0);
      std::stable_sort(eorder.begin(), eorder.end(), [&](int a, int b) {
        return rq[static_cast<std::size_t>(a)] < rq[static_cast<std::size_t>(b)];
      });
      for (int a = 0; a < c; ++a) {
        const int src = eorder[static_cast<std::size_t>(a)];
        eig.eigenvalues[static_cast<std::size_t>(lo + a)] =
            rq[static_cast<std::size_t>(src)];
        std::copy(rotated.data() + static_cast<std::size_t>(src) * n,
                  rotated.data() + static_cast<std::size_t>(src + 1) * n,
                  eig.vec(lo + a));
      }
    }
    lo = hi;
  }

  for (int i = 0; i < n; ++i) sign_fix(eig.vec(i), n);

  ChiralClassification cls = classify_chiral(eig);
  eig.pairing = std::move(cls.pairing);
  eig.zero_modes = std::move(cls.zero_modes);
  return eig;
}

ChiralClassification classify_chiral(const EigenSystem& eig,
                                     double zero_tol_rel) {
  if (!(zero_tol_rel > 0.0) || !(zero_tol_rel < 1.0)) {
    throw std::invalid_argument("zero_tol_rel must be in (0, 1)");
  }
  const int n = eig.sites;
  double emax = 0.0;
  for (double ev : eig.eigenvalues) emax = std::max(emax, std::abs(ev));

  ChiralClassification out;
  const double ztol = zero_tol_rel * emax;
  const double ptol = 1e-6 * emax;  // pairing slack, well above solver noise

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(eig.eigenvalues[static_cast<std::size_t>(a)]) <
           std::abs(eig.eigenvalues[static_cast<std::size_t>(b)]);
  });

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const int i = order[oi];
    if (used[static_cast<std::size_t>(i)]) continue;
    const double ei = eig.eigenvalues[static_cast<std::size_t>(i)];
    if (std::abs(ei) < ztol || emax == 0.0) {
      used[static_cast<std::size_t>(i)] = 1;
      out.zero_modes.push_back(i);
      continue;
    }
    // Greedy partner: nearest-|E| unused index with the opposite sign.
    int partner = -1;
    double best = ptol;
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const int j = order[oj];
      if (used[static_cast<std::size_t>(j)]) continue;
      const double ej = eig.eigenvalues[static_cast<std::size_t>(j)];
      if ((ei > 0.0) == (ej > 0.0)) continue;
      const double gap = std::abs(std::abs(ej) - std::abs(ei));
      if (gap <= best) {
        best = gap;
        partner = j;
        if (gap == 0.0) break;
      }
      if (std::abs(ej) - std::abs(ei) > ptol) break;  // order is by |E|
    }
    if (partner < 0) {
      throw std::runtime_error(
          "chiral symmetry violation: eigenvalue " + std::to_string(ei) +
          " Hz has no mirror partner within tolerance");
    }
    used[static_cast<std::size_t>(i)] = 1;
    used[static_cast<std::size_t>(partner)] = 1;
    if (ei > 0.0) {
      out.pairing.emplace_back(i, partner);
    } else {
      out.pairing.emplace_back(partner, i);
    }
  }
  std::sort(out.zero_modes.begin(), out.zero_modes.end());
  std::sort(out.pairing.begin(), out.pairing.end(),
            [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
              return eig.eigenvalues[static_cast<std::size_t>(a.first)] <
                     eig.eigenvalues[static_cast<std::size_t>(b.first)];
            });
  return out;
}

double sublattice_support(const EigenSystem& eig, const ChiralOperator& gamma,
                          int index) {
  if (index < 0 || index >= eig.sites) {
    throw std::invalid_argument("eigenstate index out of range");
  }
  if (static_cast<int>(gamma.diagonal.size()) != eig.sites) {
    throw std::invalid_argument("chiral operator dimension mismatch");
  }
  const double* v = eig.vec(index);
  double s = 0.0;
  for (int j = 0; j < eig.sites; ++j) {
    s += gamma.diagonal[static_cast<std::size_t>(j)] * v[j] * v[j];
  }
  return s;
}

void project(const EigenSystem& eig, const StateVector& psi0,
             std::vector<double>& a_re, std::vector<double>& a_im) {
  const int n = eig.sites;
  if (static_cast<int>(psi0.size()) != n) {
    throw std::invalid_argument("state dimension does not match eigensystem");
  }
  std::vector<double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    re[static_cast<std::size_t>(j)] = psi0[static_cast<std::size_t>(j)].real();
    im[static_cast<std::size_t>(j)] = psi0[static_cast<std::size_t>(j)].imag();
  }
  a_re.resize(static_cast<std::size_t>(n));
  a_im.resize(static_cast<std::size_t>(n));
  const auto& k = kern::active();
  for (int m = 0; m < n; ++m) {
    a_re[static_cast<std::size_t>(m)] = k.dot(eig.vec(m), re.data(), static_cast<std::size_t>(n));
    a_im[static_cast<std::size_t>(m)] = k.dot(eig.vec(m), im.data(), static_cast<std::size_t>(n));
  }
}

OccupationProfile occupations(const EigenSystem& eig, const StateVector& psi0) {
  std::vector<double> ar, ai;
  project(eig, psi0, ar, ai);
  OccupationProfile p;
  p.weights.resize(ar.size());
  for (std::size_t m = 0; m < ar.size(); ++m) {
    p.weights[m] = ar[m] * ar[m] + ai[m] * ai[m];
  }
  return p;
}

std::vector<double> response_spectrum(const EigenSystem& eig,
                                      const StateVector& psi0,
                                      double linewidth,
                                      const std::vector<double>& grid) {
  if (!(linewidth > 0.0)) throw std::invalid_argument("linewidth must be > 0");
  const OccupationProfile p = occupations(eig, psi0);
  std::vector<double> s(grid.size(), 0.0);
  const double hw = linewidth / 2.0;  // unit-peak Lorentzian, FWHM = linewidth
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double acc = 0.0;
    for (std::size_t m = 0; m < p.weights.size(); ++m) {
      const double x = (grid[i] - eig.eigenvalues[m]) / hw;
      acc += p.weights[m] / (1.0 + x * x);
    }
    s[i] = acc;
  }
  return s;
}

}  // namespace dpt
