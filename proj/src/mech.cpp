#include "dpt/mech.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "dpt/kernels.hpp"
#include "dpt/quench.hpp"

namespace dpt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

void check_bond(const OscillatorBank& bank, int bond) {
  if (bond < 0 || bond + 1 >= bank.size()) {
    throw std::invalid_argument("bond index out of range");
  }
}

}  // namespace

OscillatorBank make_bank(const std::vector<double>& freq_khz,
                         const std::vector<double>& q, double mass) {
  if (freq_khz.size() != q.size() || freq_khz.empty()) {
    throw std::invalid_argument("bank needs matching frequency/Q lists");
  }
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be > 0");
  OscillatorBank bank;
  bank.osc.resize(freq_khz.size());
  for (std::size_t j = 0; j < freq_khz.size(); ++j) {
    if (!(freq_khz[j] > 0.0) || !(q[j] > 0.0)) {
      throw std::invalid_argument("frequencies and Q factors must be > 0");
    }
    Oscillator& o = bank.osc[j];
    o.omega = kTwoPi * freq_khz[j] * 1e3;
    o.mass = mass;
    o.k = mass * o.omega * o.omega;
    o.q = q[j];
    o.gamma = o.omega / o.q;
    o.amp_scale = std::sqrt(o.omega / (2.0 * o.k));  // hbar = 1
  }
  return bank;
}

double eta_for_coupling(double j_hz, const OscillatorBank& bank, int bond) {
  check_bond(bank, bond);
  if (!(j_hz >= 0.0)) throw std::invalid_argument("coupling must be >= 0");
  const Oscillator& a = bank.osc[static_cast<std::size_t>(bond)];
  const Oscillator& b = bank.osc[static_cast<std::size_t>(bond) + 1];
  return 4.0 * (kTwoPi * j_hz) * std::sqrt(a.mass * b.mass * a.omega * b.omega);
}

double coupling_from_eta(double eta, const OscillatorBank& bank, int bond) {
  check_bond(bank, bond);
  const Oscillator& a = bank.osc[static_cast<std::size_t>(bond)];
  const Oscillator& b = bank.osc[static_cast<std::size_t>(bond) + 1];
  return eta / (4.0 * kTwoPi * std::sqrt(a.mass * b.mass * a.omega * b.omega));
}

DriveSchedule schedule_for_chain(const OscillatorBank& bank,
                                 const HoppingChain& chain, double t_on,
                                 double t_off) {
  if (bank.size() != chain.sites) {
    throw std::invalid_argument("bank size does not match chain sites");
  }
  DriveSchedule s;
  s.drives.resize(chain.couplings.size());
  for (std::size_t b = 0; b < chain.couplings.size(); ++b) {
    Drive& d = s.drives[b];
    d.eta = eta_for_coupling(chain.couplings[b], bank, static_cast<int>(b));
    d.omega_p = bank.osc[b].omega - bank.osc[b + 1].omega;
    d.t_on = t_on;
    d.t_off = t_off;
    if (std::abs(d.omega_p) > 0.2 * bank.osc[b].omega) {
      s.warnings.push_back("bond " + std::to_string(b + 1) +
                           ": pump frequency is not small against the "
                           "carrier (|omega_p|/omega > 0.2); the envelope "
                           "mapping degrades");
    }
  }
  return s;
}

namespace {

// Exact propagator of m z" + m gamma z' + k z = 0 over a step h:
// [z; v] -> [[a, b], [c, d]] [z; v].
struct DriftCoeffs {
  std::vector<double> a, b, c, d;
};

DriftCoeffs drift_coeffs(const OscillatorBank& bank, double h, bool damping) {
  const std::size_t n = static_cast<std::size_t>(bank.size());
  DriftCoeffs dc;
  dc.a.resize(n);
  dc.b.resize(n);
  dc.c.resize(n);
  dc.d.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = bank.osc[j].omega;
    const double g = damping ? bank.osc[j].gamma : 0.0;
    if (g == 0.0) {
      const double cw = std::cos(w * h), sw = std::sin(w * h);
      dc.a[j] = cw;
      dc.b[j] = sw / w;
      dc.c[j] = -w * sw;
      dc.d[j] = cw;
    } else {
      const double wd = std::sqrt(w * w - 0.25 * g * g);  // Q >> 1 here
      const double e = std::exp(-0.5 * g * h);
      const double cw = std::cos(wd * h), sw = std::sin(wd * h);
      dc.a[j] = e * (cw + 0.5 * g * sw / wd);
      dc.b[j] = e * sw / wd;
      dc.c[j] = -e * w * w * sw / wd;
      dc.d[j] = e * (cw - 0.5 * g * sw / wd);
    }
  }
  return dc;
}

}  // namespace

RawTrajectory integrate(const OscillatorBank& bank,
                        const DriveSchedule& schedule,
                        const std::vector<double>& z0,
                        const std::vector<double>& v0, double t_end,
                        const IntegrateOptions& opt) {
  const std::size_t n = static_cast<std::size_t>(bank.size());
  if (z0.size() != n || v0.size() != n) {
    throw std::invalid_argument("initial state size does not match bank");
  }
  if (schedule.drives.size() + 1 != n && !(n == 1 && schedule.drives.empty())) {
    throw std::invalid_argument("schedule must carry one drive per bond");
  }
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be > 0");

  double f_max = 0.0;
  for (const auto& o : bank.osc) f_max = std::max(f_max, o.omega / kTwoPi);
  double h = opt.dt;
  if (h <= 0.0) h = 1.0 / (100.0 * f_max);
  if (h > 1.0 / (50.0 * f_max)) {
    throw std::invalid_argument(
        "dt too coarse: need dt <= 1/(50 f_max) to resolve the carrier");
  }
  const int stride = std::max(1, opt.record_stride);

  const std::size_t blocks = static_cast<std::size_t>(
      std::ceil(t_end / (h * static_cast<double>(stride)) - 1e-9));
  const std::size_t n_steps = std::max<std::size_t>(1, blocks) * static_cast<std::size_t>(stride);
  const std::size_t samples = n_steps / static_cast<std::size_t>(stride) + 1;

  RawTrajectory raw;
  raw.dt = h;
  raw.sample_dt = h * static_cast<double>(stride);
  raw.n_osc = static_cast<int>(n);
  raw.samples = samples;
  raw.z.assign(n * samples, 0.0);

  // Yoshida triple-jump composition of strang splittings: drifts are exact
  // damped-harmonic propagators, kicks apply the coupling impulse.
  const double croot = std::cbrt(2.0);
  const double w1 = 1.0 / (2.0 - croot);
  const double w0 = 1.0 - 2.0 * w1;
  const double c1 = 0.5 * w1;
  const double c2 = 0.5 * (w1 + w0);
  const DriftCoeffs d1 = drift_coeffs(bank, w1 * h, opt.damping);
  const DriftCoeffs d0 = drift_coeffs(bank, w0 * h, opt.damping);

  // Ghost-padded displacements (zg[0] = zg[n+1] = 0) so the kick kernel has
  // no edge branches; velocities and 1/m are plain arrays.
  std::vector<double> zg(n + 2, 0.0);
  std::vector<double> v(v0);
  std::vector<double> minv(n);
  for (std::size_t j = 0; j < n; ++j) {
    zg[j + 1] = z0[j];
    minv[j] = 1.0 / bank.osc[j].mass;
  }

  const std::size_t nb = schedule.drives.size();
  std::vector<double> p_re(nb), p_im(nb);      // e^{i omega_p t}
  std::vector<double> r1_re(nb), r1_im(nb);    // rotation over w1*h
  std::vector<double> r0_re(nb), r0_im(nb);    // rotation over w0*h
  for (std::size_t b = 0; b < nb; ++b) {
    p_re[b] = 1.0;
    p_im[b] = 0.0;
    r1_re[b] = std::cos(schedule.drives[b].omega_p * w1 * h);
    r1_im[b] = std::sin(schedule.drives[b].omega_p * w1 * h);
    r0_re[b] = std::cos(schedule.drives[b].omega_p * w0 * h);
    r0_im[b] = std::sin(schedule.drives[b].omega_p * w0 * h);
  }
  std::vector<double> bond_l(n + 1, 0.0);  // L[b+1] = bond b, L[0] = L[n] = 0

  const auto& kern = kern::active();
  auto advance_phasors = [&](const std::vector<double>& rr,
                             const std::vector<double>& ri) {
    for (std::size_t b = 0; b < nb; ++b) {
      const double re = p_re[b] * rr[b] - p_im[b] * ri[b];
      const double im = p_re[b] * ri[b] + p_im[b] * rr[b];
      p_re[b] = re;
      p_im[b] = im;
    }
  };
  auto kick = [&](double tau, double t_now) {
    for (std::size_t b = 0; b < nb; ++b) {
      const Drive& d = schedule.drives[b];
      bond_l[b + 1] = (t_now >= d.t_on && t_now < d.t_off)
                          ? d.eta * p_re[b]
                          : 0.0;
    }
    kern.bond_kick(v.data(), zg.data(), bond_l.data(), minv.data(), tau, n);
  };
  auto drift = [&](const DriftCoeffs& dc) {
    kern.drift2x2(zg.data() + 1, v.data(), dc.a.data(), dc.b.data(),
                  dc.c.data(), dc.d.data(), n);
  };
  auto record = [&](std::size_t sample) {
    for (std::size_t j = 0; j < n; ++j) {
      raw.z[j * samples + sample] = zg[j + 1];
    }
  };

  record(0);
  kick(c1 * h, 0.0);
  for (std::size_t s = 0; s < n_steps; ++s) {
    const double t0 = static_cast<double>(s) * h;
    drift(d1);
    advance_phasors(r1_re, r1_im);
    kick(c2 * h, t0 + w1 * h);
    drift(d0);
    advance_phasors(r0_re, r0_im);
    kick(c2 * h, t0 + (w1 + w0) * h);
    drift(d1);
    advance_phasors(r1_re, r1_im);
    const double t1 = static_cast<double>(s + 1) * h;
    // Trailing half-kick, merged with the next step's leading one.
    kick((s + 1 < n_steps) ? 2.0 * c1 * h : c1 * h, t1);
    if ((s + 1) % static_cast<std::size_t>(stride) == 0) {
      record((s + 1) / static_cast<std::size_t>(stride));
    }
    if ((s + 1) % 8192 == 0) {
      // Refresh pump phasors from closed form to cap rounding drift.
      for (std::size_t b = 0; b < nb; ++b) {
        const double ph = schedule.drives[b].omega_p * t1;
        p_re[b] = std::cos(ph);
        p_im[b] = std::sin(ph);
      }
    }
  }

  raw.final_z.assign(zg.begin() + 1, zg.end() - 1);
  raw.final_v = v;
  return raw;
}

EnvelopeTrace demodulate(const RawTrajectory& raw, const OscillatorBank& bank,
                         int window_cycles, double max_coupling_hz,
                         std::size_t out_points) {
  if (bank.size() != raw.n_osc) {
    throw std::invalid_argument("bank size does not match trajectory");
  }
  if (window_cycles < 10) {
    throw std::invalid_argument(
        "window_cycles must be >= 10 to average out the carrier");
  }
  if (raw.samples < 2 || out_points < 2) {
    throw std::invalid_argument("trajectory/output too short to demodulate");
  }
  const std::size_t ns = raw.samples;
  const double t_span = raw.sample_dt * static_cast<double>(ns - 1);

  EnvelopeTrace tr;
  tr.n_osc = raw.n_osc;
  tr.times.resize(out_points);
  for (std::size_t p = 0; p < out_points; ++p) {
    tr.times[p] = t_span * static_cast<double>(p) /
                  static_cast<double>(out_points - 1);
  }
  tr.psi.assign(static_cast<std::size_t>(raw.n_osc) * out_points, {0.0, 0.0});

  for (int j = 0; j < raw.n_osc; ++j) {
    const Oscillator& o = bank.osc[static_cast<std::size_t>(j)];
    const double period = kTwoPi / o.omega;
    const double win_s = static_cast<double>(window_cycles) * period;
    if (max_coupling_hz > 0.0 && win_s > 0.1 / max_coupling_hz) {
      throw std::invalid_argument(
          "demodulation window (" + std::to_string(win_s * 1e3) +
          " ms) is longer than 10% of the coupling timescale; envelopes "
          "would smear");
    }
    std::size_t w = static_cast<std::size_t>(
        std::max(1.0, std::round(win_s / raw.sample_dt)));
    if (w > ns) w = ns;
    const double* zj = raw.z.data() + static_cast<std::size_t>(j) * ns;
    // e^{-i omega dt} rotation applied across the window sum.
    const double rot_re = std::cos(o.omega * raw.sample_dt);
    const double rot_im = -std::sin(o.omega * raw.sample_dt);
    for (std::size_t p = 0; p < out_points; ++p) {
      const double tc = tr.times[p];
      std::size_t center = static_cast<std::size_t>(
          std::min(std::max(std::round(tc / raw.sample_dt), 0.0),
                   static_cast<double>(ns - 1)));
      std::size_t lo = (center >= w / 2) ? center - w / 2 : 0;
      std::size_t hi = std::min(lo + w, ns);
      if (hi - lo < w && hi == ns) lo = ns - std::min(w, ns);
      const double t0 = static_cast<double>(lo) * raw.sample_dt;
      double q_re = std::cos(o.omega * t0);
      double q_im = -std::sin(o.omega * t0);
      double acc_re = 0.0, acc_im = 0.0;
      for (std::size_t u = lo; u < hi; ++u) {
        acc_re += zj[u] * q_re;
        acc_im += zj[u] * q_im;
        const double nr = q_re * rot_re - q_im * rot_im;
        q_im = q_re * rot_im + q_im * rot_re;
        q_re = nr;
      }
      const double scale = 2.0 / (o.amp_scale * static_cast<double>(hi - lo));
      tr.psi[static_cast<std::size_t>(j) * out_points + p] = {
          scale * acc_re, scale * acc_im};
    }
  }
  return tr;
}

EnvelopeTrace normalize_instant(const EnvelopeTrace& trace) {
  EnvelopeTrace out = trace;
  const std::size_t ns = trace.times.size();
  out.norm_l.resize(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    double sum = 0.0;
    for (int j = 0; j < trace.n_osc; ++j) {
      sum += std::norm(trace.at(j, s));
    }
    if (sum == 0.0) {
      throw std::invalid_argument(
          "cannot normalize an all-zero sample at t = " +
          std::to_string(trace.times[s]));
    }
    const double l = std::sqrt(sum);
    out.norm_l[s] = l;
    for (int j = 0; j < trace.n_osc; ++j) {
      out.psi[static_cast<std::size_t>(j) * ns + s] /= l;
    }
  }
  out.normalized = true;
  return out;
}

EnvelopeTrace tb_envelope(const EigenSystem& eig, const StateVector& psi0,
                          const std::vector<double>& times) {
  EnvelopeTrace tr;
  tr.n_osc = eig.sites;
  tr.times = times;
  tr.psi.resize(static_cast<std::size_t>(eig.sites) * times.size());
  for (std::size_t s = 0; s < times.size(); ++s) {
    const StateVector psi = evolve(eig, psi0, times[s]);
    for (int j = 0; j < eig.sites; ++j) {
      tr.psi[static_cast<std::size_t>(j) * times.size() + s] =
          psi[static_cast<std::size_t>(j)];
    }
  }
  tr.normalized = true;
  tr.norm_l.assign(times.size(), 1.0);
  return tr;
}

namespace {

std::complex<double> interp_complex(const EnvelopeTrace& tr, int j, double t) {
  const auto& ts = tr.times;
  if (t <= ts.front()) return tr.at(j, 0);
  if (t >= ts.back()) return tr.at(j, ts.size() - 1);
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
  const std::size_t lo = hi - 1;
  const double f = (t - ts[lo]) / (ts[hi] - ts[lo]);
  return tr.at(j, lo) * (1.0 - f) + tr.at(j, hi) * f;
}

double fold_half_pi(double d) {
  d = std::fmod(d, kPi);
  if (d > kPi / 2.0) d -= kPi;
  if (d <= -kPi / 2.0) d += kPi;
  return d;
}

}  // namespace

MechTbMetrics mech_vs_tb(const EnvelopeTrace& mech, const EnvelopeTrace& tb) {
  if (mech.n_osc != tb.n_osc) {
    throw std::invalid_argument("site/oscillator count mismatch");
  }
  if (!mech.normalized || !tb.normalized) {
    throw std::invalid_argument("both traces must be normalized per sample");
  }
  if (mech.times.empty() || tb.times.empty()) {
    throw std::invalid_argument("empty trace");
  }
  if (mech.times.front() < tb.times.front() - 1e-9 ||
      mech.times.back() > tb.times.back() + 1e-9) {
    throw std::invalid_argument("reference grid does not cover the trace");
  }
  MechTbMetrics m;
  double amp_sq = 0.0, ph_sq = 0.0;
  const std::size_t ns = mech.times.size();
  for (std::size_t s = 0; s < ns; ++s) {
    const double t = mech.times[s];
    for (int j = 0; j < mech.n_osc; ++j) {
      const double am = std::abs(mech.at(j, s));
      const double at = std::abs(interp_complex(tb, j, t));
      const double d = std::abs(am - at);
      m.linf_amp = std::max(m.linf_amp, d);
      amp_sq += d * d;
    }
    const double pm = std::arg(mech.at(0, s));
    const double pt = std::arg(interp_complex(tb, 0, t));
    const double dp = std::abs(fold_half_pi(pm - pt));
    m.linf_phase = std::max(m.linf_phase, dp);
    ph_sq += dp * dp;
  }
  m.rms_amp = std::sqrt(amp_sq / (static_cast<double>(ns) * mech.n_osc));
  m.rms_phase = std::sqrt(ph_sq / static_cast<double>(ns));
  return m;
}

double coupling_from_voltage(const CalibrationModel& cal, double v_ac) {
  if (!(v_ac >= 0.0)) throw std::invalid_argument("v_ac must be >= 0");
  if (cal.v_dc > 0.0 && v_ac > 0.2 * cal.v_dc) {
    std::fprintf(stderr,
                 "warning: V_AC = %g V is not small against V_DC = %g V; "
                 "the linear coupling model degrades\n",
                 v_ac, cal.v_dc);
  }
  return cal.slope_hz_per_v * v_ac;
}

double displacement_from_voltage(double v, const TransductionParams& p,
                                 double omega) {
  if (!(p.xi > 0.0) || p.xi > 1.0) {
    throw std::invalid_argument("shape factor must be in (0, 1]");
  }
  if (!(p.b_field > 0.0) || !(p.beam_length > 0.0) || !(omega > 0.0)) {
    throw std::invalid_argument("B, L and omega must be > 0");
  }
  return v / (p.xi * p.b_field * p.beam_length * omega);
}

}  // namespace dpt
