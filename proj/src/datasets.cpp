#include "dpt/datasets.hpp"

#include <stdexcept>

namespace dpt::data {

OscillatorBank beams8() {
  static const std::vector<double> f_khz = {907.184, 905.980, 923.843,
                                            893.665, 922.695, 905.627,
                                            918.246, 873.976};
  static const std::vector<double> q = {106300, 91700, 101000, 77400,
                                        105100, 71400,  119600, 84000};
  return make_bank(f_khz, q);
}

double hopping_from_splitting(double splitting_hz) {
  return 0.5 * splitting_hz;
}

std::array<double, 7> coupling_targets(Winding phase) {
  switch (phase) {
    case Winding::topological:
      return {20.0, 60.0, 20.0, 60.0, 20.0, 60.0, 20.0};
    case Winding::trivial:
      return {60.0, 20.0, 60.0, 20.0, 60.0, 20.0, 60.0};
    default:
      throw std::invalid_argument("no coupling preset for a gapless chain");
  }
}

std::array<double, 7> hopping_targets(Winding phase) {
  std::array<double, 7> j = coupling_targets(phase);
  for (double& v : j) v = hopping_from_splitting(v);
  return j;
}

VoltageSet drive_voltages(Winding phase) {
  switch (phase) {
    case Winding::topological:
      return {{0.082, 0.222, 0.069, 0.207, 0.072, 0.208, 0.072},
              {0.160, 0.240, 0.079, 0.214, 0.073, 0.220, 0.085}};
    case Winding::trivial:
      return {{0.250, 0.075, 0.205, 0.070, 0.210, 0.072, 0.230},
              {0.495, 0.079, 0.232, 0.073, 0.222, 0.074, 0.245}};
    default:
      throw std::invalid_argument("no voltage preset for a gapless chain");
  }
}

CalibrationModel default_calibration() {
  double num = 0.0, den = 0.0;
  for (Winding phase : {Winding::topological, Winding::trivial}) {
    const auto j = coupling_targets(phase);
    const auto v = drive_voltages(phase);
    for (int b = 0; b < 7; ++b) {
      for (double vac : {v.odd_circuit[static_cast<std::size_t>(b)],
                         v.even_circuit[static_cast<std::size_t>(b)]}) {
        num += j[static_cast<std::size_t>(b)] * vac;
        den += vac * vac;
      }
    }
  }
  CalibrationModel cal;
  cal.v_dc = 4.0;
  cal.slope_hz_per_v = num / den;
  return cal;
}

std::vector<DisorderSpec> disorder_table() {
  static const double rows[15][8] = {
      // strength, then the seven per-bond offsets (Hz)
      {5, -5, 1, 1, 5, 3, -2, 0},
      {5, 0, -5, 4, 2, -3, 5, -3},
      {5, 0, 5, -3, -5, 4, 2, 0},
      {5, -4, -4, -1, -3, -2, -3, -1},
      {5, -1, 2, -1, -4, -1, 1, -2},
      {10, -1, -4, -8, -8, 6, 1, 9},
      {10, -5, -8, -2, 0, -4, 4, -1},
      {10, -8, -2, 9, 6, 10, 3, -10},
      {10, 7, 5, 5, 10, -1, 6, -2},
      {10, 3, 9, -10, 5, 6, 9, 10},
      {15, -10, -4, 4, 9, -13, 13, 9},
      {15, 10, -2, 10, 9, -7, -13, -14},
      {15, -3, -7, 11, 14, -4, -13, -10},
      {15, -15, 5, -11, 9, -3, -5, 8},
      {15, -8, -15, 5, 13, 2, -11, 0},
  };
  std::vector<DisorderSpec> out(15);
  for (int r = 0; r < 15; ++r) {
    out[static_cast<std::size_t>(r)].strength = rows[r][0];
    out[static_cast<std::size_t>(r)].deltas.assign(rows[r] + 1, rows[r] + 8);
    out[static_cast<std::size_t>(r)].seed = static_cast<std::uint64_t>(r + 1);
  }
  return out;
}

DisorderSpec hopping_disorder(const DisorderSpec& device_row) {
  DisorderSpec out = device_row;
  out.strength = hopping_from_splitting(out.strength);
  for (double& d : out.deltas) d = hopping_from_splitting(d);
  return out;
}

}  // namespace dpt::data
