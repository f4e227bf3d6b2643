#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "dpt/lattice.hpp"
#include "dpt/spectral.hpp"

namespace dpt {

struct Oscillator {
  double omega = 0.0;      // rad/s
  double mass = 1.0;       // kg (nominal; observables depend only on J)
  double k = 0.0;          // N/m, = mass * omega^2
  double q = 0.0;          // quality factor
  double gamma = 0.0;      // rad/s, = omega / q
  double amp_scale = 0.0;  // A_j = sqrt(hbar*omega/(2k)), hbar = 1
};

struct OscillatorBank {
  std::vector<Oscillator> osc;

  int size() const { return static_cast<int>(osc.size()); }
};

// Frequencies in kHz, dimensionless quality factors.
OscillatorBank make_bank(const std::vector<double>& freq_khz,
                         const std::vector<double>& q, double mass = 1.0);

struct Drive {
  double eta = 0.0;      // N/m
  double omega_p = 0.0;  // rad/s, = omega_j - omega_{j+1} when auto-derived
  double t_on = 0.0;     // s
  double t_off = 0.0;    // s; the drive acts on [t_on, t_off)
};

struct DriveSchedule {
  std::vector<Drive> drives;          // one per bond
  std::vector<std::string> warnings;  // e.g. pump not slow vs carrier
};

// eta such that the parametric drive on bond j realizes hopping J (Hz):
// eta = 4 * (2 pi J) * sqrt(m_j m_{j+1} omega_j omega_{j+1}).
double eta_for_coupling(double j_hz, const OscillatorBank& bank, int bond);
double coupling_from_eta(double eta, const OscillatorBank& bank, int bond);

// One drive per chain bond at the difference frequency, on over
// [t_on, t_off).  Collects a warning per bond with |omega_p|/omega_j > 0.2.
DriveSchedule schedule_for_chain(const OscillatorBank& bank,
                                 const HoppingChain& chain, double t_on = 0.0,
                                 double t_off = 1e30);

// Carrier-level samples of z_j(t).  Oscillator-major storage:
// z[j * samples + s] is oscillator j at time s * sample_dt.
struct RawTrajectory {
  double dt = 0.0;         // integration step (s)
  double sample_dt = 0.0;  // dt * record_stride
  int n_osc = 0;
  std::size_t samples = 0;
  std::vector<double> z;
  std::vector<double> final_z;  // full state at the last step
  std::vector<double> final_v;
};

struct IntegrateOptions {
  double dt = 0.0;        // 0 -> 1 / (100 * max f_j); must be <= 1/(50 f_max)
  int record_stride = 4;  // keep every stride-th step
  bool damping = false;
};

// Fixed-step 4th-order integration of
//   m_j z"_j + m_j gamma_j z'_j + k_j z_j
//     = L_j(t)(z_{j+1} - z_j) + L_{j-1}(t)(z_{j-1} - z_j),
// L_j(t) = eta_j cos(omega_p^j t) inside the drive window, via a Yoshida
// composition of exact harmonic drifts and impulse coupling kicks.
RawTrajectory integrate(const OscillatorBank& bank,
                        const DriveSchedule& schedule,
                        const std::vector<double>& z0,
                        const std::vector<double>& v0, double t_end,
                        const IntegrateOptions& opt = {});

// Slow complex envelopes.  When normalized, sum_j |psi_j|^2 = 1 per sample
// and norm_l holds the divisor.
struct EnvelopeTrace {
  std::vector<double> times;
  int n_osc = 0;
  std::vector<std::complex<double>> psi;  // osc-major [j * times.size() + s]
  bool normalized = false;
  std::vector<double> norm_l;

  std::complex<double> at(int j, std::size_t s) const {
    return psi[static_cast<std::size_t>(j) * times.size() + s];
  }
};

// Lock-in style demodulation: psi_j(t) = (2/A_j) x moving average of
// z_j e^{-i omega_j t} over window_cycles carrier periods, evaluated at
// out_points equally spaced times.  window_cycles must be >= 10; when
// max_coupling_hz > 0 the window must stay below 10% of 1/J.
EnvelopeTrace demodulate(const RawTrajectory& raw, const OscillatorBank& bank,
                         int window_cycles = 50, double max_coupling_hz = 0.0,
                         std::size_t out_points = 2001);

EnvelopeTrace normalize_instant(const EnvelopeTrace& trace);

// Tight-binding envelopes on an explicit grid (for comparisons).
EnvelopeTrace tb_envelope(const EigenSystem& eig, const StateVector& psi0,
                          const std::vector<double>& times);

struct MechTbMetrics {
  double linf_amp = 0.0;
  double rms_amp = 0.0;
  double linf_phase = 0.0;  // edge-site phase, folded mod pi
  double rms_phase = 0.0;
};

// Compares per-site |psi_j| and the edge-site phase (mod pi) on the mech
// trace's grid; the reference is interpolated.  Both traces must be
// normalized and share the oscillator count.
MechTbMetrics mech_vs_tb(const EnvelopeTrace& mech, const EnvelopeTrace& tb);

// Linear voltage-to-coupling calibration, J = slope * V_AC.
struct CalibrationModel {
  double d2c_dz2 = 0.0;         // F/m^2, informational
  double v_dc = 4.0;            // V
  double slope_hz_per_v = 0.0;  // Hz/V
};

// Warns (stderr) when v_ac is not small against v_dc.
double coupling_from_voltage(const CalibrationModel& cal, double v_ac);

struct TransductionParams {
  double xi = 0.83;         // shape factor of the first vibrational mode
  double b_field = 0.0;     // T
  double beam_length = 0.0; // m
};

// |z(omega)| = |V(omega)| / (xi * B * L * omega).
double displacement_from_voltage(double v, const TransductionParams& p,
                                 double omega);

}  // namespace dpt
