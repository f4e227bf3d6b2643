#pragma once

#include <vector>

#include "dpt/lattice.hpp"
#include "dpt/quench.hpp"

namespace dpt {

// Parameter-space scan setup.  The evolution window is dimensionless by
// default (window_jbt = J_B * T) so diagrams are invariant under joint
// scaling of couplings and 1/T; window_s, when positive, overrides it with
// an absolute window.
struct SweepConfig {
  int unit_cells = 40;         // 80 sites
  double j_b = 60.0;           // final-chain intercell coupling (Hz)
  double initial_ratio = 0.0;  // J_A/J_B of the initial chain; 0 -> basis
                               // edge state e_1 (fully dimerized limit)
  double window_jbt = 2.4;     // J_B * T
  double window_s = 0.0;       // absolute window override (s)
  double grid_step = 0.0;      // zero-scan step (s); 0 -> window/4000
  double root_tol = 1e-7;      // s
  double ratio_tol = 1e-4;     // bisection half-width in J_A/J_B
  int workers = 0;             // 0 -> hardware
};

struct BoundaryResult {
  double r_c = 0.0;
  double half_width = 0.0;
  double window_jbt = 0.0;
  double window_s = 0.0;
  int evaluations = 0;
};

struct PhaseDiagram {
  std::vector<double> j_a;       // axis values (Hz)
  std::vector<double> j_b;       // axis values (Hz)
  std::vector<char> dpt;         // row-major [ib * j_a.size() + ia]
  std::vector<double> first_tc;  // s; NaN where no zero found
  bool monotone = true;  // dpt non-decreasing in J_A/J_B along each J_B row
};

double sweep_window_s(const SweepConfig& c);

// Initial state for a sweep cell whose final chain has intercell coupling
// j_b: e_1 for initial_ratio = 0, else the edge eigenstate of the
// (initial_ratio * j_b, j_b) chain.
StateVector sweep_initial_state(const SweepConfig& c, double j_b);

// DPT presence for a final chain with J_A = ratio * c.j_b, J_B = c.j_b.
bool dpt_at(double ratio, const SweepConfig& c);

// Bisected dynamical phase boundary in J_A/J_B.  The bracket must straddle:
// dpt_at(lo) false, dpt_at(hi) true.
BoundaryResult boundary(const SweepConfig& c, double lo = 0.705,
                        double hi = 1.2);

std::vector<BoundaryResult> boundary_vs_initial(
    const std::vector<double>& initial_ratios, const SweepConfig& c,
    double lo = 0.705, double hi = 1.2);

// Independent DPT evaluation per (J_A, J_B) cell; deterministic for fixed
// config regardless of worker count.
PhaseDiagram scan_diagram(const std::vector<double>& j_a,
                          const std::vector<double>& j_b,
                          const SweepConfig& c);

}  // namespace dpt
