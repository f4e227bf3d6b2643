#include "dpt/phasemap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dpt/threadpool.hpp"

namespace dpt {

namespace {

void validate(const SweepConfig& c) {
  if (c.unit_cells < 1) throw std::invalid_argument("unit_cells must be >= 1");
  if (!(c.j_b > 0.0)) throw std::invalid_argument("j_b must be > 0");
  if (!(c.initial_ratio >= 0.0) || c.initial_ratio >= 1.0) {
    throw std::invalid_argument(
        "initial_ratio must be in [0, 1): the initial chain has to be "
        "topological to host an edge state");
  }
  if (sweep_window_s(c) <= 0.0) {
    throw std::invalid_argument("evolution window must be positive");
  }
}

std::vector<double> cell_critical_times(const SweepConfig& c, double j_a,
                                        double j_b, double window) {
  const HoppingChain final_chain = build_ssh(c.unit_cells, j_a, j_b);
  const EigenSystem eig = eigendecompose(final_chain);
  const StateVector psi0 = sweep_initial_state(c, j_b);
  return critical_times(eig, psi0, window, c.grid_step, c.root_tol);
}

}  // namespace

double sweep_window_s(const SweepConfig& c) {
  return (c.window_s > 0.0) ? c.window_s : c.window_jbt / c.j_b;
}

StateVector sweep_initial_state(const SweepConfig& c, double j_b) {
  if (c.initial_ratio == 0.0) return edge_state(2 * c.unit_cells);
  return edge_eigenstate(build_ssh(c.unit_cells, c.initial_ratio * j_b, j_b));
}

bool dpt_at(double ratio, const SweepConfig& c) {
  validate(c);
  if (!(ratio > 0.0)) throw std::invalid_argument("ratio must be > 0");
  const double window = sweep_window_s(c);
  QuenchSpec spec;
  spec.final_chain = build_ssh(c.unit_cells, ratio * c.j_b, c.j_b);
  if (c.initial_ratio == 0.0) {
    spec.initial_state = edge_state(2 * c.unit_cells);
  } else {
    spec.initial_chain = build_ssh(c.unit_cells, c.initial_ratio * c.j_b, c.j_b);
  }
  spec.times = {0.0, window};
  const DptReport rep = classify_dpt(spec, {c.unit_cells});
  return rep.dpt_present;
}

BoundaryResult boundary(const SweepConfig& c, double lo, double hi) {
  validate(c);
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("bracket must satisfy 0 < lo < hi");
  }
  BoundaryResult out;
  out.window_s = sweep_window_s(c);
  out.window_jbt = (c.window_s > 0.0) ? c.window_s * c.j_b : c.window_jbt;

  if (dpt_at(lo, c)) {
    throw std::invalid_argument("bracket low end " + std::to_string(lo) +
                                " already shows a DPT; bracket must straddle "
                                "the boundary");
  }
  if (!dpt_at(hi, c)) {
    throw std::invalid_argument("bracket high end " + std::to_string(hi) +
                                " shows no DPT; bracket must straddle the "
                                "boundary");
  }
  out.evaluations = 2;
  while (0.5 * (hi - lo) > c.ratio_tol) {
    const double mid = 0.5 * (lo + hi);
    ++out.evaluations;
    if (dpt_at(mid, c)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.r_c = 0.5 * (lo + hi);
  out.half_width = 0.5 * (hi - lo);
  return out;
}

std::vector<BoundaryResult> boundary_vs_initial(
    const std::vector<double>& initial_ratios, const SweepConfig& c,
    double lo, double hi) {
  std::vector<BoundaryResult> out(initial_ratios.size());
  parallel_for(initial_ratios.size(), c.workers, [&](std::size_t i) {
    SweepConfig ci = c;
    ci.initial_ratio = initial_ratios[i];
    ci.workers = 1;
    out[i] = boundary(ci, lo, hi);
  });
  return out;
}

PhaseDiagram scan_diagram(const std::vector<double>& j_a,
                          const std::vector<double>& j_b,
                          const SweepConfig& c) {
  validate(c);
  if (j_a.empty() || j_b.empty()) {
    throw std::invalid_argument("diagram grid must be non-empty");
  }
  PhaseDiagram d;
  d.j_a = j_a;
  d.j_b = j_b;
  const std::size_t cells = j_a.size() * j_b.size();
  d.dpt.assign(cells, 0);
  d.first_tc.assign(cells, std::numeric_limits<double>::quiet_NaN());

  parallel_for(cells, c.workers, [&](std::size_t idx) {
    const std::size_t ia = idx % j_a.size();
    const std::size_t ib = idx / j_a.size();
    // Per-cell window: T = window_jbt / J_B keeps the scan scale-free.
    const double window =
        (c.window_s > 0.0) ? c.window_s : c.window_jbt / j_b[ib];
    const std::vector<double> roots =
        cell_critical_times(c, j_a[ia], j_b[ib], window);
    if (!roots.empty()) {
      d.dpt[idx] = 1;
      d.first_tc[idx] = roots.front();
    }
  });

  // Flag any non-monotone row: along increasing J_A/J_B at fixed J_B the
  // DPT region must not have holes.
  for (std::size_t ib = 0; ib < j_b.size() && d.monotone; ++ib) {
    std::vector<std::size_t> order(j_a.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return j_a[a] < j_a[b]; });
    bool seen = false;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const bool f = d.dpt[ib * j_a.size() + order[k]] != 0;
      if (seen && !f) {
        d.monotone = false;
        break;
      }
      seen = seen || f;
    }
  }
  return d;
}

}  // namespace dpt
