#include "cli_run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>

#include "dpt/datasets.hpp"
#include "dpt/lattice.hpp"
#include "dpt/mech.hpp"
#include "dpt/phasemap.hpp"
#include "dpt/quench.hpp"
#include "dpt/spectral.hpp"
#include "dpt/svg.hpp"
#include "dpt/table_io.hpp"
#include "dpt/threadpool.hpp"

namespace dpt::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir + ": " +
                             ec.message());
  }
}

void write_effective_config(const std::string& dir, const json& eff) {
  io::write_text(join(dir, "effective_config.json"), eff.dump(2) + "\n");
}

std::vector<double> linspace(double t0, double t1, int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    t[static_cast<std::size_t>(i)] =
        t0 + (t1 - t0) * static_cast<double>(i) / (points - 1);
  }
  return t;
}

int require_min(int v, int lo, const char* key) {
  if (v < lo) {
    throw ConfigError(std::string("key \"") + key + "\" must be >= " +
                      std::to_string(lo));
  }
  return v;
}

double require_pos(double v, const char* key) {
  if (!(v > 0.0)) {
    throw ConfigError(std::string("key \"") + key + "\" must be > 0");
  }
  return v;
}

double require_ratio(double v, const char* key) {
  if (!(v >= 0.0) || v >= 1.0) {
    throw ConfigError(std::string("key \"") + key +
                      "\" must lie in [0, 1)");
  }
  return v;
}

std::string ms_list(const std::vector<double>& times_s) {
  if (times_s.empty()) return "(none)";
  std::string s;
  for (double t : times_s) {
    if (!s.empty()) s += ' ';
    s += io::fmt_g(t * 1e3);
  }
  return s;
}

const char* verdict_name(SizeVerdict v) {
  switch (v) {
    case SizeVerdict::robust:
      return "robust";
    case SizeVerdict::size_artifact:
      return "size_artifact";
    default:
      return "not_applicable";
  }
}

void write_trace_svgs(const std::string& dir, const LoschmidtTrace& trace) {
  std::vector<double> t_ms(trace.times.size());
  for (std::size_t i = 0; i < t_ms.size(); ++i) t_ms[i] = trace.times[i] * 1e3;
  svg::LinePlot rate;
  rate.title = "Return rate";
  rate.x_label = "t (ms)";
  rate.y_label = "lambda";
  rate.series.push_back({"lambda(t)", t_ms, trace.rate, false});
  io::write_text(join(dir, "rate.svg"), svg::render_line_svg(rate));

  svg::LinePlot pgp;
  pgp.title = "Pancharatnam geometric phase";
  pgp.x_label = "t (ms)";
  pgp.y_label = "phi_P (rad)";
  pgp.series.push_back({"phi_P(t)", t_ms, trace.phi_p, true});
  io::write_text(join(dir, "pgp.svg"), svg::render_line_svg(pgp));
}

struct DisorderedChain {
  HoppingChain chain;
  std::optional<DisorderSpec> disorder;
};

// Shared by quench/disorder runs: explicit deltas win over sampling.
DisorderedChain build_final_chain(int unit_cells, double j_intra,
                                  double j_inter, double strength,
                                  const std::vector<double>& deltas,
                                  std::uint64_t seed) {
  DisorderedChain out{build_ssh(unit_cells, j_intra, j_inter), std::nullopt};
  const std::size_t bonds = out.chain.couplings.size();
  if (!deltas.empty()) {
    if (deltas.size() != bonds) {
      throw ConfigError("key \"disorder_deltas\" must have " +
                        std::to_string(bonds) + " entries");
    }
    out.disorder = DisorderSpec{strength, deltas, seed};
  } else if (strength > 0.0) {
    out.disorder = sample_disorder(strength, static_cast<int>(bonds), seed);
  }
  if (out.disorder) out.chain = apply_disorder(out.chain, *out.disorder);
  return out;
}

}  // namespace

int config_worker_hint(const json& cfg) {
  if (!cfg.contains("workers")) return 0;
  const json& v = cfg["workers"];
  if (!v.is_number_integer()) {
    throw ConfigError("key \"workers\" must be an integer");
  }
  const int n = v.get<int>();
  if (n < 0) throw ConfigError("key \"workers\" must be >= 0");
  return n;
}

int run_quench(const json& cfg, const RunContext& ctx) {
  ConfigReader r(cfg);
  r.text("command", "quench");
  const int uc = require_min(r.integer("unit_cells", 4), 1, "unit_cells");
  const double j_intra = r.number("j_intra", 30.0);
  const double j_inter = r.number("j_inter", 10.0);
  const double ratio = require_ratio(r.number("initial_ratio", 0.0),
                                     "initial_ratio");
  const double window_ms = require_pos(r.number("window_ms", 40.0),
                                       "window_ms");
  const int points = require_min(r.integer("points", 2001), 2, "points");
  const std::vector<int> escalation = r.integer_list("escalation_cells", {});
  const double dstrength = r.number("disorder_strength_hz", 0.0);
  if (dstrength < 0.0) {
    throw ConfigError("key \"disorder_strength_hz\" must be >= 0");
  }
  const std::uint64_t dseed = r.uinteger("disorder_seed", 1);
  const std::vector<double> deltas = r.number_list("disorder_deltas", {});
  r.integer("workers", 0);
  const bool emit_svg = ctx.svg || r.boolean("emit_svg", false);
  r.finish();

  const DisorderedChain fc =
      build_final_chain(uc, j_intra, j_inter, dstrength, deltas, dseed);
  QuenchSpec spec;
  spec.final_chain = fc.chain;
  if (ratio > 0.0) {
    spec.initial_chain = build_ssh(uc, ratio * j_inter, j_inter);
  } else {
    spec.initial_state = edge_state(fc.chain.sites);
  }
  spec.times = linspace(0.0, window_ms * 1e-3, points);

  const LoschmidtTrace trace = quench_trace(spec);
  const DptReport report = classify_dpt(spec, escalation);

  ensure_out_dir(ctx.out_dir);
  io::write_text(join(ctx.out_dir, "chain.json"),
                 io::chain_json(fc.chain,
                                fc.disorder ? &*fc.disorder : nullptr));
  io::write_text(join(ctx.out_dir, "trace.csv"), io::trace_csv(trace));
  io::write_text(join(ctx.out_dir, "report.json"), io::report_json(report));
  if (emit_svg) write_trace_svgs(ctx.out_dir, trace);

  json eff = cfg;
  eff["unit_cells"] = uc;
  eff["j_intra"] = j_intra;
  eff["j_inter"] = j_inter;
  eff["initial_ratio"] = ratio;
  eff["window_ms"] = window_ms;
  eff["points"] = points;
  eff["disorder_strength_hz"] = dstrength;
  eff["disorder_seed"] = dseed;
  if (fc.disorder) eff["disorder_deltas"] = fc.disorder->deltas;
  eff["workers"] = ctx.workers;
  eff["emit_svg"] = emit_svg;
  write_effective_config(ctx.out_dir, eff);

  std::printf("quench: %d sites, final couplings (%s, %s) Hz\n",
              fc.chain.sites, io::fmt_g(j_intra).c_str(),
              io::fmt_g(j_inter).c_str());
  std::printf("dpt_present: %s\n", report.dpt_present ? "true" : "false");
  std::printf("critical times (ms): %s\n",
              ms_list(report.critical_times).c_str());
  std::printf("pgp jumps (ms): %s\n", ms_list(report.pgp_jump_times).c_str());
  std::printf("min |G|: %s\n", io::fmt_g(report.min_abs_g).c_str());
  std::printf("finite-size verdict: %s\n",
              verdict_name(report.finite_size_verdict));
  return 0;
}

int run_disorder(const json& cfg, const RunContext& ctx) {
  ConfigReader r(cfg);
  r.text("command", "disorder");
  const int uc = require_min(r.integer("unit_cells", 4), 1, "unit_cells");
  const double j_intra = r.number("j_intra", 30.0);
  const double j_inter = r.number("j_inter", 10.0);
  const double ratio = require_ratio(r.number("initial_ratio", 0.0),
                                     "initial_ratio");
  const std::string rows = r.text("rows", "random");
  if (rows != "random" && rows != "table") {
    throw ConfigError("key \"rows\" must be \"random\" or \"table\"");
  }
  if (rows == "table" &&
      (r.has("strengths_hz") || r.has("samples_per_strength"))) {
    throw ConfigError(
        "keys \"strengths_hz\"/\"samples_per_strength\" conflict with "
        "rows=\"table\" (the table is fixed)");
  }
  std::vector<double> strengths =
      r.number_list("strengths_hz", {5.0, 10.0, 15.0});
  const int per =
      require_min(r.integer("samples_per_strength", 5), 1,
                  "samples_per_strength");
  const std::uint64_t seed = r.uinteger("seed", 1);
  const double window_ms = require_pos(r.number("window_ms", 40.0),
                                       "window_ms");
  const int trace_points =
      require_min(r.integer("trace_points", 801), 2, "trace_points");
  const bool write_traces = r.boolean("write_traces", true);
  r.integer("workers", 0);
  const bool emit_svg = ctx.svg || r.boolean("emit_svg", false);
  r.finish();
  for (double s : strengths) {
    if (s < 0.0) throw ConfigError("key \"strengths_hz\" must be >= 0");
  }

  const HoppingChain base = build_ssh(uc, j_intra, j_inter);
  const int bonds = static_cast<int>(base.couplings.size());

  std::vector<DisorderSpec> specs;
  std::vector<double> spec_strength;
  if (rows == "table") {
    // Catalog rows are in device peak-splitting units; the chain works in
    // hoppings, so halve strengths and offsets alongside.
    for (const auto& row : data::disorder_table()) {
      specs.push_back(data::hopping_disorder(row));
    }
    if (bonds != static_cast<int>(specs.front().deltas.size())) {
      throw ConfigError(
          "rows=\"table\" requires a chain with " +
          std::to_string(specs.front().deltas.size()) + " bonds");
    }
    strengths.clear();
    for (const auto& s : specs) {
      spec_strength.push_back(s.strength);
      if (strengths.empty() || strengths.back() != s.strength) {
        strengths.push_back(s.strength);
      }
    }
  } else {
    std::uint64_t k = 0;
    for (double s : strengths) {
      for (int i = 0; i < per; ++i, ++k) {
        specs.push_back(sample_disorder(s, bonds, seed + k));
        spec_strength.push_back(s);
      }
    }
  }

  const std::size_t n = specs.size();
  std::vector<double> tc1(n, kNan), tc2(n, kNan);
  std::vector<char> jump(n, 0);
  std::vector<LoschmidtTrace> traces(n);
  const double window_s = window_ms * 1e-3;

  parallel_for(n, static_cast<std::size_t>(ctx.workers), [&](std::size_t i) {
    QuenchSpec spec;
    spec.final_chain = apply_disorder(base, specs[i]);
    if (ratio > 0.0) {
      spec.initial_chain = build_ssh(uc, ratio * j_inter, j_inter);
    } else {
      spec.initial_state = edge_state(base.sites);
    }
    spec.times = linspace(0.0, window_s, trace_points);
    if (write_traces) traces[i] = quench_trace(spec);
    const DptReport rep = classify_dpt(spec, {uc});
    if (!rep.critical_times.empty()) tc1[i] = rep.critical_times.front();
    if (rep.critical_times.size() > 1) tc2[i] = rep.critical_times[1];
    jump[i] = rep.pgp_jump_times.empty() ? 0 : 1;
  });

  ensure_out_dir(ctx.out_dir);
  std::vector<std::vector<double>> sample_rows;
  for (std::size_t i = 0; i < n; ++i) {
    sample_rows.push_back({static_cast<double>(i), spec_strength[i],
                           static_cast<double>(specs[i].seed), tc1[i] * 1e3,
                           tc2[i] * 1e3, static_cast<double>(jump[i])});
  }
  io::write_text(
      join(ctx.out_dir, "samples.csv"),
      io::csv_table({"sample", "strength_hz", "seed", "tc1_ms", "tc2_ms",
                     "pgp_jump"},
                    sample_rows));

  std::vector<std::vector<double>> stat_rows;
  for (double s : strengths) {
    double mean = 0.0, m2 = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (spec_strength[i] != s || std::isnan(tc1[i])) continue;
      ++used;
      const double d = tc1[i] - mean;
      mean += d / used;
      m2 += d * (tc1[i] - mean);
    }
    const double sd = used > 1 ? std::sqrt(m2 / (used - 1)) : 0.0;
    stat_rows.push_back({s, static_cast<double>(used),
                         used > 0 ? mean * 1e3 : kNan, sd * 1e3});
    std::printf(
        "strength %s Hz: %d samples with a first critical time, mean "
        "%s ms, std %s ms\n",
        io::fmt_g(s).c_str(), used, io::fmt_g(mean * 1e3).c_str(),
        io::fmt_g(sd * 1e3).c_str());
  }
  io::write_text(join(ctx.out_dir, "stats.csv"),
                 io::csv_table({"strength_hz", "samples_with_tc",
                                "mean_tc1_ms", "std_tc1_ms"},
                               stat_rows));

  if (write_traces) {
    const std::string tdir = join(ctx.out_dir, "traces");
    ensure_out_dir(tdir);
    for (std::size_t i = 0; i < n; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "sample_%03zu.csv", i);
      io::write_text(join(tdir, name), io::trace_csv(traces[i]));
    }
  }
  if (emit_svg && write_traces && !traces.empty()) {
    std::vector<double> t_ms(traces[0].times.size());
    for (std::size_t i = 0; i < t_ms.size(); ++i) {
      t_ms[i] = traces[0].times[i] * 1e3;
    }
    svg::LinePlot pgp;
    pgp.title = "PGP under disorder";
    pgp.x_label = "t (ms)";
    pgp.y_label = "phi_P (rad)";
    for (std::size_t i = 0; i < n; ++i) {
      pgp.series.push_back({"sample " + std::to_string(i), t_ms,
                            traces[i].phi_p, true});
    }
    io::write_text(join(ctx.out_dir, "pgp.svg"), svg::render_line_svg(pgp));
  }

  const int all_jump =
      static_cast<int>(std::count(jump.begin(), jump.end(), char(1)));
  std::printf("samples with a PGP jump: %d / %zu\n", all_jump, n);

  json eff = cfg;
  eff["rows"] = rows;
  eff["unit_cells"] = uc;
  eff["j_intra"] = j_intra;
  eff["j_inter"] = j_inter;
  eff["initial_ratio"] = ratio;
  eff["window_ms"] = window_ms;
  eff["trace_points"] = trace_points;
  eff["write_traces"] = write_traces;
  eff["seed"] = seed;
  if (rows == "random") {
    eff["strengths_hz"] = strengths;
    eff["samples_per_strength"] = per;
  }
  eff["workers"] = ctx.workers;
  eff["emit_svg"] = emit_svg;
  write_effective_config(ctx.out_dir, eff);
  return 0;
}

int run_sweep(const json& cfg, const RunContext& ctx) {
  ConfigReader r(cfg);
  r.text("command", "sweep");
  const std::string mode = r.text("mode", "boundary");
  if (mode != "boundary" && mode != "curve" && mode != "grid") {
    throw ConfigError(
        "key \"mode\" must be \"boundary\", \"curve\" or \"grid\"");
  }
  SweepConfig c;
  c.unit_cells = require_min(r.integer("unit_cells", 40), 1, "unit_cells");
  c.j_b = require_pos(r.number("j_b", 60.0), "j_b");
  c.initial_ratio = require_ratio(r.number("initial_ratio", 0.0),
                                  "initial_ratio");
  c.window_jbt = r.number("window_jbt", 2.4);
  c.window_s = r.number("window_s", 0.0);
  c.grid_step = r.number("grid_step_s", 0.0);
  c.root_tol = require_pos(r.number("root_tol_s", 1e-7), "root_tol_s");
  c.ratio_tol = require_pos(r.number("ratio_tol", 1e-4), "ratio_tol");
  c.workers = ctx.workers;
  const double lo = r.number("bracket_lo", 0.705);
  const double hi = r.number("bracket_hi", 1.2);
  const std::vector<double> ratios =
      r.number_list("initial_ratios", {0.0, 0.2, 0.4, 0.6, 0.8});
  const std::vector<double> j_a_values = r.number_list("j_a_values", {});
  const std::vector<double> j_b_values = r.number_list("j_b_values", {});
  r.integer("workers", 0);
  const bool emit_svg = ctx.svg || r.boolean("emit_svg", false);
  r.finish();

  ensure_out_dir(ctx.out_dir);
  json eff = cfg;
  eff["mode"] = mode;
  eff["unit_cells"] = c.unit_cells;
  eff["j_b"] = c.j_b;
  eff["initial_ratio"] = c.initial_ratio;
  eff["window_jbt"] = c.window_jbt;
  eff["window_s"] = c.window_s;
  eff["root_tol_s"] = c.root_tol;
  eff["ratio_tol"] = c.ratio_tol;
  eff["workers"] = ctx.workers;
  eff["emit_svg"] = emit_svg;

  if (mode == "boundary") {
    const BoundaryResult b = boundary(c, lo, hi);
    io::write_text(join(ctx.out_dir, "boundary.json"), io::boundary_json(b));
    eff["bracket_lo"] = lo;
    eff["bracket_hi"] = hi;
    write_effective_config(ctx.out_dir, eff);
    std::printf("r_c = %s +- %s (window J_B*T = %s, %d evaluations)\n",
                io::fmt_g(b.r_c).c_str(), io::fmt_g(b.half_width).c_str(),
                io::fmt_g(b.window_jbt).c_str(), b.evaluations);
    return 0;
  }

  if (mode == "curve") {
    const std::vector<BoundaryResult> rs = boundary_vs_initial(ratios, c, lo,
                                                               hi);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      rows.push_back({ratios[i], rs[i].r_c, rs[i].half_width,
                      rs[i].window_s, static_cast<double>(rs[i].evaluations)});
    }
    io::write_text(join(ctx.out_dir, "curve.csv"),
                   io::csv_table({"initial_ratio", "r_c", "half_width",
                                  "window_s", "evaluations"},
                                 rows));
    if (emit_svg) {
      std::vector<double> rc;
      for (const auto& b : rs) rc.push_back(b.r_c);
      svg::LinePlot plot;
      plot.title = "Dynamical phase boundary vs initial ratio";
      plot.x_label = "initial J_A/J_B";
      plot.y_label = "r_c";
      plot.series.push_back({"r_c", ratios, rc, false});
      io::write_text(join(ctx.out_dir, "curve.svg"),
                     svg::render_line_svg(plot));
    }
    eff["bracket_lo"] = lo;
    eff["bracket_hi"] = hi;
    eff["initial_ratios"] = ratios;
    write_effective_config(ctx.out_dir, eff);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      std::printf("initial ratio %s: r_c = %s\n",
                  io::fmt_g(ratios[i]).c_str(), io::fmt_g(rs[i].r_c).c_str());
    }
    return 0;
  }

  // grid
  if (j_a_values.empty() || j_b_values.empty()) {
    throw ConfigError(
        "grid mode needs non-empty \"j_a_values\" and \"j_b_values\"");
  }
  const PhaseDiagram d = scan_diagram(j_a_values, j_b_values, c);
  io::write_text(join(ctx.out_dir, "diagram.csv"), io::diagram_csv(d));
  if (emit_svg) {
    svg::Heatmap map;
    map.title = "Dynamical phase diagram";
    map.x_label = "J_A (Hz)";
    map.y_label = "J_B (Hz)";
    map.x = d.j_a;
    map.y = d.j_b;
    map.value.assign(d.dpt.begin(), d.dpt.end());
    io::write_text(join(ctx.out_dir, "diagram.svg"),
                   svg::render_heatmap_svg(map));
  }
  eff["j_a_values"] = j_a_values;
  eff["j_b_values"] = j_b_values;
  write_effective_config(ctx.out_dir, eff);
  std::printf("grid: %zu x %zu cells, monotone rows: %s\n",
              j_a_values.size(), j_b_values.size(),
              d.monotone ? "true" : "false");
  return 0;
}

namespace {

OscillatorBank bank_from_config(ConfigReader& r) {
  auto raw = r.raw("bank");
  if (!raw || raw->is_string()) {
    const std::string name = raw ? raw->get<std::string>() : "beams-8";
    if (name != "beams-8") {
      throw ConfigError("key \"bank\" names an unknown dataset \"" + name +
                        "\" (available: beams-8)");
    }
    return data::beams8();
  }
  if (!raw->is_object()) {
    throw ConfigError("key \"bank\" must be \"beams-8\" or an object");
  }
  ConfigReader br(*raw, "bank");
  const std::vector<double> f = br.number_list("freq_khz", {});
  const std::vector<double> q = br.number_list("q", {});
  br.finish();
  if (f.empty() || f.size() != q.size()) {
    throw ConfigError(
        "bank object needs equal-length \"freq_khz\" and \"q\" arrays");
  }
  return make_bank(f, q);
}

std::vector<double> couplings_from_config(ConfigReader& r,
                                          const OscillatorBank& bank) {
  const std::vector<double> explicit_j = r.number_list("couplings_hz", {});
  const std::string cpreset = r.text("coupling_preset", "");
  const std::string vpreset = r.text("voltage_preset", "");
  const std::string circuit = r.text("voltage_circuit", "odd");
  const int given = (!explicit_j.empty() ? 1 : 0) +
                    (!cpreset.empty() ? 1 : 0) + (!vpreset.empty() ? 1 : 0);
  if (given != 1) {
    throw ConfigError(
        "give exactly one of \"couplings_hz\", \"coupling_preset\" or "
        "\"voltage_preset\"");
  }
  const std::size_t bonds = static_cast<std::size_t>(bank.size()) - 1;
  auto phase_of = [](const std::string& name) {
    if (name == "topological") return Winding::topological;
    if (name == "trivial") return Winding::trivial;
    throw ConfigError("coupling/voltage preset must be \"topological\" or "
                      "\"trivial\", got \"" + name + "\"");
  };

  // The effective config keeps the source keys exactly as given; they
  // re-resolve to the same couplings, and chain.json records the numbers.
  std::vector<double> j;
  if (!explicit_j.empty()) {
    j = explicit_j;
  } else if (!cpreset.empty()) {
    const auto targets = data::hopping_targets(phase_of(cpreset));
    j.assign(targets.begin(), targets.end());
  } else {
    if (circuit != "odd" && circuit != "even") {
      throw ConfigError("key \"voltage_circuit\" must be \"odd\" or "
                        "\"even\"");
    }
    const auto volts = data::drive_voltages(phase_of(vpreset));
    const auto& v = circuit == "odd" ? volts.odd_circuit : volts.even_circuit;
    const CalibrationModel cal = data::default_calibration();
    for (double vac : v) {
      j.push_back(data::hopping_from_splitting(coupling_from_voltage(cal, vac)));
    }
    std::printf("calibration slope: %s splitting-Hz/V\n",
                io::fmt_g(cal.slope_hz_per_v).c_str());
  }
  if (j.size() != bonds) {
    throw ConfigError("need " + std::to_string(bonds) +
                      " couplings for this bank, got " +
                      std::to_string(j.size()));
  }
  return j;
}

}  // namespace

int run_mech(const json& cfg, const RunContext& ctx) {
  ConfigReader r(cfg);
  r.text("command", "mech");
  json eff = cfg;
  const OscillatorBank bank = bank_from_config(r);
  const std::vector<double> j = couplings_from_config(r, bank);
  const int excite = require_min(r.integer("excite_site", 1), 1,
                                 "excite_site");
  if (excite > bank.size()) {
    throw ConfigError("key \"excite_site\" exceeds the bank size");
  }
  const double window_ms = require_pos(r.number("window_ms", 40.0),
                                       "window_ms");
  const double dt_ns = r.number("dt_ns", 0.0);
  if (dt_ns < 0.0) throw ConfigError("key \"dt_ns\" must be >= 0");
  const int stride = require_min(r.integer("record_stride", 4), 1,
                                 "record_stride");
  const int cycles = require_min(r.integer("window_cycles", 50), 10,
                                 "window_cycles");
  const int out_points = require_min(r.integer("out_points", 2001), 2,
                                     "out_points");
  const bool damping = r.boolean("damping", false);
  const bool write_raw_file = r.boolean("write_raw", false);
  const bool compare_tb = r.boolean("compare_tb", true);
  r.integer("workers", 0);
  const bool emit_svg = ctx.svg || r.boolean("emit_svg", false);
  r.finish();

  const HoppingChain chain = make_chain(j);
  const DriveSchedule schedule = schedule_for_chain(bank, chain);
  for (const auto& w : schedule.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }

  std::vector<double> z0(static_cast<std::size_t>(bank.size()), 0.0);
  std::vector<double> v0(static_cast<std::size_t>(bank.size()), 0.0);
  z0[static_cast<std::size_t>(excite - 1)] =
      bank.osc[static_cast<std::size_t>(excite - 1)].amp_scale;

  IntegrateOptions opt;
  opt.dt = dt_ns * 1e-9;
  opt.record_stride = stride;
  opt.damping = damping;
  const RawTrajectory raw =
      integrate(bank, schedule, z0, v0, window_ms * 1e-3, opt);

  const double j_max = *std::max_element(j.begin(), j.end());
  const EnvelopeTrace mech = normalize_instant(
      demodulate(raw, bank, cycles, j_max, static_cast<std::size_t>(out_points)));

  ensure_out_dir(ctx.out_dir);
  io::write_text(join(ctx.out_dir, "chain.json"), io::chain_json(chain));
  io::write_text(join(ctx.out_dir, "envelopes.csv"), io::envelope_csv(mech));
  if (write_raw_file) io::write_raw(join(ctx.out_dir, "raw.bin"), raw);

  if (compare_tb) {
    const EigenSystem eig = eigendecompose(chain);
    StateVector psi0(static_cast<std::size_t>(chain.sites), {0.0, 0.0});
    psi0[static_cast<std::size_t>(excite - 1)] = 1.0;
    const EnvelopeTrace tb = tb_envelope(eig, psi0, mech.times);
    io::write_text(join(ctx.out_dir, "tb_envelopes.csv"),
                   io::envelope_csv(tb));
    const MechTbMetrics m = mech_vs_tb(mech, tb);
    std::string mj = "{\n  \"linf_amp\": " + io::fmt_g(m.linf_amp) +
                     ",\n  \"rms_amp\": " + io::fmt_g(m.rms_amp) +
                     ",\n  \"linf_phase_rad\": " + io::fmt_g(m.linf_phase) +
                     ",\n  \"rms_phase_rad\": " + io::fmt_g(m.rms_phase) +
                     "\n}\n";
    io::write_text(join(ctx.out_dir, "metrics.json"), mj);
    std::printf("mech vs tight-binding: L_inf amplitude %s, rms %s\n",
                io::fmt_g(m.linf_amp).c_str(), io::fmt_g(m.rms_amp).c_str());
  }

  if (emit_svg) {
    std::vector<double> t_ms(mech.times.size());
    for (std::size_t i = 0; i < t_ms.size(); ++i) t_ms[i] = mech.times[i] * 1e3;
    svg::LinePlot plot;
    plot.title = "Normalized envelopes";
    plot.x_label = "t (ms)";
    plot.y_label = "|psi_j|";
    for (int jx = 0; jx < mech.n_osc; ++jx) {
      std::vector<double> amp(mech.times.size());
      for (std::size_t s = 0; s < mech.times.size(); ++s) {
        amp[s] = std::abs(mech.at(jx, s));
      }
      plot.series.push_back({"site " + std::to_string(jx + 1), t_ms, amp,
                             false});
    }
    io::write_text(join(ctx.out_dir, "envelopes.svg"),
                   svg::render_line_svg(plot));
  }

  eff["bank"] = cfg.contains("bank") ? cfg["bank"] : json("beams-8");
  eff["excite_site"] = excite;
  eff["window_ms"] = window_ms;
  eff["dt_ns"] = dt_ns;
  eff["record_stride"] = stride;
  eff["window_cycles"] = cycles;
  eff["out_points"] = out_points;
  eff["damping"] = damping;
  eff["write_raw"] = write_raw_file;
  eff["compare_tb"] = compare_tb;
  eff["workers"] = ctx.workers;
  eff["emit_svg"] = emit_svg;
  write_effective_config(ctx.out_dir, eff);

  std::printf("integrated %zu steps of %s ns, %zu recorded samples\n",
              static_cast<std::size_t>(
                  std::llround(raw.sample_dt / raw.dt *
                               static_cast<double>(raw.samples - 1))),
              io::fmt_g(raw.dt * 1e9).c_str(), raw.samples);
  return 0;
}

int run_spectrum(const json& cfg, const RunContext& ctx) {
  ConfigReader r(cfg);
  r.text("command", "spectrum");
  const std::string mode = r.text("mode", "chain");
  if (mode != "chain" && mode != "bank") {
    throw ConfigError("key \"mode\" must be \"chain\" or \"bank\"");
  }
  json eff = cfg;
  eff["mode"] = mode;
  ensure_out_dir(ctx.out_dir);

  if (mode == "chain") {
    const int uc = require_min(r.integer("unit_cells", 4), 1, "unit_cells");
    const double j_intra = r.number("j_intra", 10.0);
    const double j_inter = r.number("j_inter", 30.0);
    const int probe = require_min(r.integer("probe_site", 1), 1,
                                  "probe_site");
    const double lw = require_pos(r.number("linewidth_hz", 2.0),
                                  "linewidth_hz");
    double f_min = r.number("f_min_hz", 0.0);
    double f_max = r.number("f_max_hz", 0.0);
    const int points = require_min(r.integer("f_points", 2001), 2,
                                   "f_points");
    r.integer("workers", 0);
    const bool emit_svg = ctx.svg || r.boolean("emit_svg", false);
    r.finish();

    const HoppingChain chain = build_ssh(uc, j_intra, j_inter);
    if (probe > chain.sites) {
      throw ConfigError("key \"probe_site\" exceeds the chain length");
    }
    if (f_min == 0.0 && f_max == 0.0) {
      const double half = 1.2 * (j_intra + j_inter);
      if (half <= 0.0) {
        throw ConfigError("chain has no bandwidth; give f_min_hz/f_max_hz");
      }
      f_min = -half;
      f_max = half;
    }
    if (!(f_max > f_min)) {
      throw ConfigError("need f_max_hz > f_min_hz");
    }
    const EigenSystem eig = eigendecompose(chain);
    StateVector psi0(static_cast<std::size_t>(chain.sites), {0.0, 0.0});
    psi0[static_cast<std::size_t>(probe - 1)] = 1.0;
    const std::vector<double> grid = linspace(f_min, f_max, points);
    const std::vector<double> s = response_spectrum(eig, psi0, lw, grid);
    io::write_text(join(ctx.out_dir, "spectrum.csv"),
                   io::spectrum_csv(grid, {s}));
    if (emit_svg) {
      svg::LinePlot plot;
      plot.title = "Site response spectrum";
      plot.x_label = "f (Hz)";
      plot.y_label = "S(f)";
      plot.series.push_back({"site " + std::to_string(probe), grid, s,
                             false});
      io::write_text(join(ctx.out_dir, "spectrum.svg"),
                     svg::render_line_svg(plot));
    }
    const double mid = s[static_cast<std::size_t>(points / 2)];
    std::printf("zero-frequency response: %s\n", io::fmt_g(mid).c_str());

    eff["unit_cells"] = uc;
    eff["j_intra"] = j_intra;
    eff["j_inter"] = j_inter;
    eff["probe_site"] = probe;
    eff["linewidth_hz"] = lw;
    eff["f_min_hz"] = f_min;
    eff["f_max_hz"] = f_max;
    eff["f_points"] = points;
    eff["workers"] = ctx.workers;
    eff["emit_svg"] = emit_svg;
    write_effective_config(ctx.out_dir, eff);
    return 0;
  }

  // bank mode: one Lorentzian column per beam around its own resonance.
  const OscillatorBank bank = bank_from_config(r);
  double f_lo = r.number("bank_f_min_khz", 0.0);
  double f_hi = r.number("bank_f_max_khz", 0.0);
  const int points = require_min(r.integer("bank_points", 52001), 2,
                                 "bank_points");
  r.integer("workers", 0);
  const bool emit_svg = ctx.svg || r.boolean("emit_svg", false);
  r.finish();

  double lo_auto = 1e300, hi_auto = 0.0;
  for (const auto& o : bank.osc) {
    const double f_khz = o.omega / (2.0 * 3.14159265358979323846) * 1e-3;
    lo_auto = std::min(lo_auto, f_khz);
    hi_auto = std::max(hi_auto, f_khz);
  }
  if (f_lo == 0.0 && f_hi == 0.0) {
    f_lo = lo_auto - 0.2;
    f_hi = hi_auto + 0.2;
  }
  if (!(f_hi > f_lo)) throw ConfigError("need bank_f_max_khz > bank_f_min_khz");
  const std::vector<double> grid_khz = linspace(f_lo, f_hi, points);
  std::vector<double> grid_hz(grid_khz.size());
  for (std::size_t i = 0; i < grid_khz.size(); ++i) {
    grid_hz[i] = grid_khz[i] * 1e3;
  }
  std::vector<std::vector<double>> cols;
  for (const auto& o : bank.osc) {
    const double f0 = o.omega / (2.0 * 3.14159265358979323846);
    const double hw = 0.5 * f0 / o.q;  // FWHM = f0/Q, Hz
    std::vector<double> col(grid_hz.size());
    for (std::size_t i = 0; i < grid_hz.size(); ++i) {
      const double x = (grid_hz[i] - f0) / hw;
      col[i] = 1.0 / (1.0 + x * x);
    }
    cols.push_back(std::move(col));
  }
  io::write_text(join(ctx.out_dir, "spectrum.csv"),
                 io::spectrum_csv(grid_hz, cols));
  if (emit_svg) {
    svg::LinePlot plot;
    plot.title = "Beam response spectra";
    plot.x_label = "f (kHz)";
    plot.y_label = "S(f)";
    for (std::size_t jx = 0; jx < cols.size(); ++jx) {
      plot.series.push_back({"beam " + std::to_string(jx + 1), grid_khz,
                             cols[jx], false});
    }
    io::write_text(join(ctx.out_dir, "spectrum.svg"),
                   svg::render_line_svg(plot));
  }
  std::printf("bank spectrum: %d beams over [%s, %s] kHz\n", bank.size(),
              io::fmt_g(f_lo).c_str(), io::fmt_g(f_hi).c_str());

  eff["bank"] = cfg.contains("bank") ? cfg["bank"] : json("beams-8");
  eff["bank_f_min_khz"] = f_lo;
  eff["bank_f_max_khz"] = f_hi;
  eff["bank_points"] = points;
  eff["workers"] = ctx.workers;
  eff["emit_svg"] = emit_svg;
  write_effective_config(ctx.out_dir, eff);
  return 0;
}

}  // namespace dpt::cli
