#include "dpt/quench.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include "dpt/kernels.hpp"

namespace dpt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double chirality_expectation(const StateVector& psi) {
  double s = 0.0, n = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double w = std::norm(psi[j]);
    s += ((j % 2 == 0) ? w : -w);
    n += w;
  }
  return (n > 0.0) ? s / n : 0.0;
}

void require_polarized(const StateVector& psi) {
  if (std::abs(chirality_expectation(psi)) < 1.0 - 1e-8) {
    throw std::invalid_argument(
        "initial state is not sublattice-polarized; the merged real form "
        "only applies to single-sublattice states");
  }
}

// Wrap to (-pi, pi].
double wrap_phase(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi <= -kPi) phi += kTwoPi;
  if (phi > kPi) phi -= kTwoPi;
  return phi;
}

bool uniform_grid(const std::vector<double>& t, double& dt) {
  if (t.size() < 3) {
    dt = (t.size() == 2) ? t[1] - t[0] : 0.0;
    return t.size() == 2;
  }
  dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double expect = t.front() + dt * static_cast<double>(i);
    if (std::abs(t[i] - expect) > 1e-12 * std::max(1.0, std::abs(expect))) {
      return false;
    }
  }
  return dt > 0.0;
}

// Shared state preparation: overlaps and weights of psi0 in the eigenbasis.
struct Projection {
  std::vector<double> a_re, a_im, w;
};

Projection project_weights(const EigenSystem& eig, const StateVector& psi0) {
  Projection p;
  project(eig, psi0, p.a_re, p.a_im);
  p.w.resize(p.a_re.size());
  for (std::size_t n = 0; n < p.w.size(); ++n) {
    p.w[n] = p.a_re[n] * p.a_re[n] + p.a_im[n] * p.a_im[n];
  }
  return p;
}

bool is_basis_edge_state(const StateVector& psi) {
  if (psi.empty() || psi[0] != std::complex<double>(1.0, 0.0)) return false;
  for (std::size_t j = 1; j < psi.size(); ++j) {
    if (psi[j] != std::complex<double>(0.0, 0.0)) return false;
  }
  return true;
}

// Clean alternating two-value pattern (j_intra, j_inter); needs at least one
// intercell bond to be recoverable.
bool clean_pattern(const HoppingChain& c, double& j_intra, double& j_inter) {
  if (c.couplings.size() < 2) return false;
  j_intra = c.couplings[0];
  j_inter = c.couplings[1];
  for (std::size_t j = 0; j < c.couplings.size(); ++j) {
    if (c.couplings[j] != ((j % 2 == 0) ? j_intra : j_inter)) return false;
  }
  return true;
}

}  // namespace

StateVector edge_eigenstate(const EigenSystem& eig) {
  if (eig.zero_modes.size() != 2) {
    throw std::invalid_argument(
        "edge eigenstate needs a zero-mode doublet; chain has " +
        std::to_string(eig.zero_modes.size()) +
        " zero modes (final ratio not topological?)");
  }
  const int n = eig.sites;
  const double* va = eig.vec(eig.zero_modes[0]);
  const double* vb = eig.vec(eig.zero_modes[1]);
  // 2x2 Gram matrix of the chiral operator on the doublet span; its +1
  // eigenvector is the odd-sublattice (left-edge) mode.
  double gaa = 0.0, gab = 0.0, gbb = 0.0;
  for (int j = 0; j < n; ++j) {
    const double s = (j % 2 == 0) ? 1.0 : -1.0;
    gaa += s * va[j] * va[j];
    gab += s * va[j] * vb[j];
    gbb += s * vb[j] * vb[j];
  }
  double ca, cb;
  if (std::abs(gab) < 1e-14) {
    // Already polarized (exactly dimerized chains land here).
    if (gaa >= gbb) {
      ca = 1.0;
      cb = 0.0;
    } else {
      ca = 0.0;
      cb = 1.0;
    }
  } else {
    const double half = 0.5 * (gaa - gbb);
    const double lam = 0.5 * (gaa + gbb) + std::hypot(half, gab);
    // (lam - gaa) ca = gab cb
    ca = gab;
    cb = lam - gaa;
    const double nn = std::hypot(ca, cb);
    ca /= nn;
    cb /= nn;
  }
  StateVector psi(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    psi[static_cast<std::size_t>(j)] = ca * va[j] + cb * vb[j];
  }
  // Kill the (numerically tiny) even-sublattice residue so the state is
  // exactly polarized, then normalize and point the edge amplitude up.
  for (int j = 1; j < n; j += 2) psi[static_cast<std::size_t>(j)] = 0.0;
  normalize(psi);
  if (psi[0].real() < 0.0) {
    for (auto& a : psi) a = -a;
  }
  return psi;
}

StateVector edge_eigenstate(const HoppingChain& chain) {
  return edge_eigenstate(eigendecompose(chain));
}

StateVector evolve(const EigenSystem& eig, const StateVector& psi0, double t) {
  const int n = eig.sites;
  Projection p = project_weights(eig, psi0);
  std::vector<double> out_re(static_cast<std::size_t>(n), 0.0);
  std::vector<double> out_im(static_cast<std::size_t>(n), 0.0);
  const auto& k = kern::active();
  for (int m = 0; m < n; ++m) {
    const double th = -kTwoPi * eig.eigenvalues[static_cast<std::size_t>(m)] * t;
    const double c = std::cos(th), s = std::sin(th);
    const double br = p.a_re[static_cast<std::size_t>(m)] * c -
                      p.a_im[static_cast<std::size_t>(m)] * s;
    const double bi = p.a_re[static_cast<std::size_t>(m)] * s +
                      p.a_im[static_cast<std::size_t>(m)] * c;
    k.axpy_cplx(br, bi, eig.vec(m), out_re.data(), out_im.data(),
                static_cast<std::size_t>(n));
  }
  StateVector psi(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    psi[static_cast<std::size_t>(j)] =
        std::complex<double>(out_re[static_cast<std::size_t>(j)],
                             out_im[static_cast<std::size_t>(j)]);
  }
  return psi;
}

std::vector<std::complex<double>> loschmidt(const EigenSystem& eig,
                                            const StateVector& psi0,
                                            const std::vector<double>& times) {
  const Projection p = project_weights(eig, psi0);
  const std::size_t n = p.w.size();
  std::vector<std::complex<double>> g(times.size());

  double dt = 0.0;
  if (uniform_grid(times, dt) && times.size() > 16) {
    // Phasor recurrence: c_n(t+dt) = c_n(t) * e^{-i 2 pi E_n dt}; refreshed
    // from closed form periodically to cap rounding drift.
    std::vector<double> c_re(n), c_im(n), r_re(n), r_im(n);
    for (std::size_t m = 0; m < n; ++m) {
      const double th0 = -kTwoPi * eig.eigenvalues[m] * times.front();
      c_re[m] = std::cos(th0);
      c_im[m] = std::sin(th0);
      const double th = -kTwoPi * eig.eigenvalues[m] * dt;
      r_re[m] = std::cos(th);
      r_im[m] = std::sin(th);
    }
    const auto& k = kern::active();
    double gr = 0.0, gi = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      gr += p.w[m] * c_re[m];
      gi += p.w[m] * c_im[m];
    }
    g[0] = {gr, gi};
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (i % 4096 == 0) {
        for (std::size_t m = 0; m < n; ++m) {
          const double th = -kTwoPi * eig.eigenvalues[m] * times[i - 1];
          c_re[m] = std::cos(th);
          c_im[m] = std::sin(th);
        }
      }
      gr = gi = 0.0;
      k.rotate_accum(c_re.data(), c_im.data(), r_re.data(), r_im.data(),
                     p.w.data(), n, &gr, &gi);
      g[i] = {gr, gi};
    }
  } else {
    for (std::size_t i = 0; i < times.size(); ++i) {
      double gr = 0.0, gi = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        const double th = -kTwoPi * eig.eigenvalues[m] * times[i];
        gr += p.w[m] * std::cos(th);
        gi += p.w[m] * std::sin(th);
      }
      g[i] = {gr, gi};
    }
  }
  return g;
}

MergedSpectrum merge_pairs(const EigenSystem& eig, const StateVector& psi0) {
  require_polarized(psi0);
  const Projection p = project_weights(eig, psi0);
  MergedSpectrum ms;
  for (int zi : eig.zero_modes) {
    ms.c0 += p.w[static_cast<std::size_t>(zi)];
  }
  ms.e.reserve(eig.pairing.size());
  ms.w.reserve(eig.pairing.size());
  for (const auto& [ip, im] : eig.pairing) {
    const double ep = eig.eigenvalues[static_cast<std::size_t>(ip)];
    const double em = eig.eigenvalues[static_cast<std::size_t>(im)];
    ms.e.push_back(0.5 * (ep - em));
    ms.w.push_back(0.5 * (p.w[static_cast<std::size_t>(ip)] +
                          p.w[static_cast<std::size_t>(im)]));
  }
  return ms;
}

double merged_value(const MergedSpectrum& ms, double t) {
  double g = ms.c0;
  for (std::size_t m = 0; m < ms.e.size(); ++m) {
    g += 2.0 * ms.w[m] * std::cos(kTwoPi * ms.e[m] * t);
  }
  return g;
}

std::vector<double> merged_loschmidt(const EigenSystem& eig,
                                     const StateVector& psi0,
                                     const std::vector<double>& times) {
  const MergedSpectrum ms = merge_pairs(eig, psi0);
  std::vector<double> g(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    g[i] = merged_value(ms, times[i]);
  }
  return g;
}

namespace {

std::vector<double> rate_from_moduli(const std::vector<double>& r,
                                     int unit_cells) {
  if (unit_cells < 1) throw std::invalid_argument("unit_cells must be >= 1");
  std::vector<double> lam(r.size());
  const double inv_n = 1.0 / static_cast<double>(unit_cells);
  for (std::size_t i = 0; i < r.size(); ++i) {
    lam[i] = (r[i] == 0.0) ? std::numeric_limits<double>::infinity()
                           : -2.0 * inv_n * std::log(r[i]);
  }
  return lam;
}

}  // namespace

std::vector<double> rate_function(const std::vector<std::complex<double>>& g,
                                  int unit_cells) {
  std::vector<double> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = std::abs(g[i]);
  return rate_from_moduli(r, unit_cells);
}

std::vector<double> rate_function(const std::vector<double>& g,
                                  int unit_cells) {
  std::vector<double> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = std::abs(g[i]);
  return rate_from_moduli(r, unit_cells);
}

double dynamical_phase(const EigenSystem& eig, const StateVector& psi0,
                       double t) {
  const Projection p = project_weights(eig, psi0);
  double s = 0.0;
  for (std::size_t m = 0; m < p.w.size(); ++m) {
    s += p.w[m] * eig.eigenvalues[m];
  }
  return -kTwoPi * s * t;
}

PhaseSeries pgp(const std::vector<double>& g, double zero_tol) {
  PhaseSeries ps;
  ps.phi.resize(g.size());
  ps.carried.assign(g.size(), false);
  double prev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g[i]) < zero_tol) {
      ps.phi[i] = prev;
      ps.carried[i] = true;
    } else {
      ps.phi[i] = (g[i] > 0.0) ? 0.0 : kPi;
      prev = ps.phi[i];
    }
  }
  return ps;
}

PhaseSeries pgp(const std::vector<std::complex<double>>& g, double zero_tol,
                double im_tol) {
  std::vector<double> re(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g[i].imag()) > im_tol) {
      throw std::runtime_error(
          "chiral symmetry violation: |Im G| = " +
          std::to_string(std::abs(g[i].imag())) + " exceeds tolerance");
    }
    // Gate on the complex modulus so a genuinely vanishing amplitude is
    // carried even when Im G noise dominates Re G.
    re[i] = (std::abs(g[i]) < zero_tol) ? 0.0 : g[i].real();
  }
  return pgp(re, zero_tol);
}

std::vector<double> pgp_jump_times(const std::vector<double>& times,
                                   const std::vector<double>& phi,
                                   double offset) {
  if (times.size() != phi.size()) {
    throw std::invalid_argument("times/phi length mismatch");
  }
  std::vector<double> jumps;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    if (std::abs((phi[i + 1] - offset) - (phi[i] - offset)) > kPi / 2.0) {
      jumps.push_back(0.5 * (times[i] + times[i + 1]));
    }
  }
  return jumps;
}

namespace {

double bisect_zero(const MergedSpectrum& ms, double lo, double hi,
                   double root_tol) {
  double glo = merged_value(ms, lo);
  for (int it = 0; it < 200 && (hi - lo) > root_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = merged_value(ms, mid);
    if (gm == 0.0) return mid;
    if ((glo > 0.0) == (gm > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> roots_of_merged(const MergedSpectrum& ms, double t_end,
                                    double grid_step, double root_tol) {
  if (!(t_end > 0.0)) throw std::invalid_argument("window must be positive");
  if (grid_step <= 0.0) grid_step = t_end / 4000.0;
  const std::size_t cells = static_cast<std::size_t>(
      std::max(1.0, std::ceil(t_end / grid_step - 1e-9)));
  const double h = t_end / static_cast<double>(cells);
  std::vector<double> roots;
  double gp = merged_value(ms, 0.0);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double t = h * static_cast<double>(i);
    const double gi = merged_value(ms, t);
    if (gi == 0.0) {
      roots.push_back(t);
    } else if (gp != 0.0 && (gp > 0.0) != (gi > 0.0)) {
      roots.push_back(bisect_zero(ms, t - h, t, root_tol));
    }
    gp = gi;
  }
  return roots;
}

}  // namespace

std::vector<double> critical_times(const EigenSystem& eig,
                                   const StateVector& psi0, double t_end,
                                   double grid_step, double root_tol) {
  const MergedSpectrum ms = merge_pairs(eig, psi0);
  return roots_of_merged(ms, t_end, grid_step, root_tol);
}

StateVector resolve_initial_state(const QuenchSpec& spec) {
  StateVector psi;
  if (spec.initial_chain.has_value()) {
    if (spec.initial_chain->sites != spec.final_chain.sites) {
      throw std::invalid_argument("initial/final chain size mismatch");
    }
    psi = edge_eigenstate(*spec.initial_chain);
  } else {
    psi = spec.initial_state;
  }
  if (static_cast<int>(psi.size()) != spec.final_chain.sites) {
    throw std::invalid_argument("initial state dimension mismatch");
  }
  const double nn = norm(psi);
  if (nn == 0.0) throw std::invalid_argument("initial state is zero");
  if (std::abs(nn - 1.0) > 1e-12) normalize(psi);
  return psi;
}

namespace {

void validate_times(const std::vector<double>& t) {
  if (t.empty() || t.front() != 0.0) {
    throw std::invalid_argument("time grid must start at 0");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) {
      throw std::invalid_argument("time grid must be strictly increasing");
    }
  }
}

}  // namespace

LoschmidtTrace quench_trace(const QuenchSpec& spec) {
  validate_times(spec.times);
  const StateVector psi0 = resolve_initial_state(spec);
  const EigenSystem eig = eigendecompose(spec.final_chain);

  LoschmidtTrace tr;
  tr.times = spec.times;
  tr.g = loschmidt(eig, psi0, spec.times);
  tr.r.resize(tr.g.size());
  for (std::size_t i = 0; i < tr.g.size(); ++i) tr.r[i] = std::abs(tr.g[i]);
  tr.rate = rate_function(tr.g, spec.final_chain.unit_cells);

  const double s0 = dynamical_phase(eig, psi0, 1.0);  // slope * 1 s
  tr.phi_dyn.resize(tr.times.size());
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    tr.phi_dyn[i] = s0 * tr.times[i];
  }

  const double zero_tol = 1e-12;
  const bool chiral = std::abs(chirality_expectation(psi0)) >= 1.0 - 1e-8;
  tr.phi.resize(tr.times.size());
  tr.carried.assign(tr.times.size(), false);
  if (chiral) {
    const PhaseSeries ps = pgp(tr.g, zero_tol);
    tr.phi_p = ps.phi;
    tr.carried = ps.carried;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      tr.phi[i] = tr.carried[i] ? wrap_phase(tr.phi_dyn[i] + tr.phi_p[i])
                                : std::arg(tr.g[i]);
    }
  } else {
    tr.phi_p.resize(tr.times.size());
    double prev_p = 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      if (tr.r[i] < zero_tol) {
        tr.phi_p[i] = prev_p;
        tr.carried[i] = true;
        tr.phi[i] = wrap_phase(tr.phi_dyn[i] + prev_p);
      } else {
        tr.phi[i] = std::arg(tr.g[i]);
        tr.phi_p[i] = wrap_phase(tr.phi[i] - tr.phi_dyn[i]);
        prev_p = tr.phi_p[i];
      }
    }
  }
  return tr;
}

DptReport classify_dpt(const QuenchSpec& spec,
                       const std::vector<int>& escalation_sizes) {
  validate_times(spec.times);
  const int base_n = spec.final_chain.unit_cells;
  std::vector<int> sizes = escalation_sizes;
  if (sizes.empty()) sizes = {base_n, 2 * base_n, 4 * base_n};
  if (sizes.front() != base_n) {
    throw std::invalid_argument(
        "escalation_sizes must start at the quench's own unit-cell count");
  }
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("escalation_sizes must be ascending");
    }
  }

  const double t_end = spec.times.back();
  const StateVector psi0 = resolve_initial_state(spec);
  const EigenSystem eig = eigendecompose(spec.final_chain);
  const MergedSpectrum ms = merge_pairs(eig, psi0);

  DptReport rep;
  rep.critical_times = roots_of_merged(ms, t_end, 0.0, 1e-7);
  rep.dpt_present = !rep.critical_times.empty();

  // PGP jump times from the sign record of the same fine grid, refined on
  // the merged amplitude inside each jump bracket.
  {
    const std::size_t cells = 4000;
    const double h = t_end / static_cast<double>(cells);
    std::vector<double> tgrid(cells + 1), gvals(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
      tgrid[i] = h * static_cast<double>(i);
      gvals[i] = merged_value(ms, tgrid[i]);
    }
    const PhaseSeries ps = pgp(gvals);
    rep.min_abs_g = 1.0;
    for (double v : gvals) rep.min_abs_g = std::min(rep.min_abs_g, std::abs(v));
    for (std::size_t i = 0; i + 1 < ps.phi.size(); ++i) {
      if (ps.phi[i] != ps.phi[i + 1]) {
        rep.pgp_jump_times.push_back(
            bisect_zero(ms, tgrid[i], tgrid[i + 1], 1e-7));
      }
    }
    if (rep.dpt_present) rep.min_abs_g = 0.0;
  }

  rep.finite_size_verdict = SizeVerdict::not_applicable;
  if (rep.dpt_present && sizes.size() > 1) {
    double fj_a = 0.0, fj_b = 0.0, ij_a = 0.0, ij_b = 0.0;
    const bool final_clean = clean_pattern(spec.final_chain, fj_a, fj_b);
    bool initial_scalable = false;
    bool initial_from_chain = false;
    if (spec.initial_chain.has_value()) {
      initial_from_chain = clean_pattern(*spec.initial_chain, ij_a, ij_b);
      initial_scalable = initial_from_chain;
    } else {
      initial_scalable = is_basis_edge_state(spec.initial_state);
    }
    if (final_clean && initial_scalable) {
      bool persists = true;
      for (std::size_t k = 1; k < sizes.size() && persists; ++k) {
        const HoppingChain big = build_ssh(sizes[k], fj_a, fj_b);
        const EigenSystem beig = eigendecompose(big);
        StateVector bpsi;
        if (initial_from_chain) {
          bpsi = edge_eigenstate(build_ssh(sizes[k], ij_a, ij_b));
        } else {
          bpsi = edge_state(big.sites);
        }
        const MergedSpectrum bms = merge_pairs(beig, bpsi);
        persists = !roots_of_merged(bms, t_end, 0.0, 1e-7).empty();
      }
      rep.finite_size_verdict =
          persists ? SizeVerdict::robust : SizeVerdict::size_artifact;
    }
  }
  return rep;
}

}  // namespace dpt
