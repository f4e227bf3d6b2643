// End-to-end checks of the dptsim binary (spawned via DPTSIM_BIN), plus the
// serialization and SVG helpers the CLI is built on.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpt/mech.hpp"
#include "dpt/svg.hpp"
#include "dpt/table_io.hpp"

namespace fs = std::filesystem;

namespace {

std::string bin_path() {
  const char* v = std::getenv("DPTSIM_BIN");
  if (v == nullptr || v[0] == '\0') {
    throw std::runtime_error("DPTSIM_BIN must point at the dptsim binary");
  }
  return v;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

fs::path scratch_root() {
  static const fs::path root = [] {
    fs::path p = fs::temp_directory_path() /
                 ("dptsim_cli_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = scratch_root() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  REQUIRE(bool(out));
  out << body;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// `head` goes in front of the binary (env assignments); `args` after it.
CliResult run_cli(const std::string& args, const std::string& tag,
                  const std::string& head = "") {
  const fs::path dir = fresh_dir("io_" + tag);
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = head + quoted(bin_path()) + " " + args + " >" +
                          quoted(out.string()) + " 2>" +
                          quoted(err.string());
  const int rc = std::system(cmd.c_str());
  CliResult r;
  if (WIFEXITED(rc)) r.exit_code = WEXITSTATUS(rc);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::size_t count_occurrences(const std::string& hay,
                              const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size())) {
    ++n;
  }
  return n;
}

std::vector<std::string> lines_of(const std::string& body) {
  std::vector<std::string> out;
  std::istringstream ss(body);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<double> row_values(const std::string& line) {
  std::vector<double> out;
  std::istringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(std::stod(field));
  return out;
}

}  // namespace

TEST_CASE("version_and_help") {
  const auto ver = run_cli("--version", "version");
  CHECK(ver.exit_code == 0);
  CHECK(contains(ver.out, "dptsim 1.0"));

  const auto help = run_cli("--help", "help");
  CHECK(help.exit_code == 0);
  CHECK(contains(help.out, "quench"));
  CHECK(contains(help.out, "spectrum"));
  CHECK(contains(help.out, "Presets:"));
}

TEST_CASE("missing_subcommand_is_an_error") {
  const auto r = run_cli("", "nosub");
  CHECK(r.exit_code != 0);
}

TEST_CASE("preset_errors") {
  const auto bad = run_cli("quench --preset nope --out " +
                               quoted((fresh_dir("preset_bad")).string()),
                           "preset_bad_run");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "unknown preset"));

  // quench-i pins command=quench; running it under another subcommand fails.
  const auto mismatch =
      run_cli("disorder --preset quench-i --out " +
                  quoted((fresh_dir("preset_mismatch")).string()),
              "preset_mismatch_run");
  CHECK(mismatch.exit_code == 2);
  CHECK(contains(mismatch.err, "command"));
}

TEST_CASE("unknown_config_key_is_fatal") {
  const fs::path dir = fresh_dir("unknown_key");
  spit(dir / "cfg.json", "{\"frobnicate\": 1}\n");
  const auto r = run_cli("quench --config " + quoted((dir / "cfg.json").string()) +
                             " --out " + quoted((dir / "out").string()),
                         "unknown_key_run");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "unknown key \"frobnicate\" in config"));

  // Nested readers report their own scope.
  spit(dir / "bank.json",
       "{\"bank\": {\"freq_khz\": [900.0], \"q\": [1000.0], \"zzz\": 1},"
       " \"couplings_hz\": []}\n");
  const auto rb = run_cli("mech --config " + quoted((dir / "bank.json").string()) +
                              " --out " + quoted((dir / "out2").string()),
                          "unknown_bank_key_run");
  CHECK(rb.exit_code == 2);
  CHECK(contains(rb.err, "unknown key \"zzz\" in bank"));
}

TEST_CASE("invalid_values_are_config_errors") {
  const fs::path dir = fresh_dir("bad_values");

  spit(dir / "points.json", "{\"points\": 1}\n");
  const auto pts = run_cli(
      "quench --config " + quoted((dir / "points.json").string()) + " --out " +
          quoted((dir / "o1").string()),
      "bad_points");
  CHECK(pts.exit_code == 2);
  CHECK(contains(pts.err, "points"));

  spit(dir / "broken.json", "{\"points\": \n");
  const auto broken = run_cli(
      "quench --config " + quoted((dir / "broken.json").string()) + " --out " +
          quoted((dir / "o2").string()),
      "bad_json");
  CHECK(broken.exit_code == 2);

  const auto w0 = run_cli("quench --preset quench-i --workers 0 --out " +
                              quoted((dir / "o3").string()),
                          "workers_zero");
  CHECK(w0.exit_code == 2);
  CHECK(contains(w0.err, "--workers"));

  const auto wenv = run_cli("quench --preset quench-i --out " +
                                quoted((dir / "o4").string()),
                            "workers_env", "DPTSIM_WORKERS=abc ");
  CHECK(wenv.exit_code == 2);
  CHECK(contains(wenv.err, "DPTSIM_WORKERS"));
}

TEST_CASE("quench_preset_outputs_and_determinism") {
  const fs::path d1 = fresh_dir("quench_run1");
  const auto r1 = run_cli("quench --preset quench-i --workers 1 --out " +
                              quoted(d1.string()),
                          "quench1");
  REQUIRE(r1.exit_code == 0);
  CHECK(contains(r1.out, "dpt_present: true"));
  // Hoppings (30, 10) on 8 sites: zeros of the edge-state return amplitude.
  CHECK(contains(r1.out, "8.45386"));
  CHECK(contains(r1.out, "25.4032"));
  CHECK(contains(r1.out, "finite-size verdict: robust"));
  for (const char* name :
       {"trace.csv", "report.json", "chain.json", "effective_config.json"}) {
    CHECK_MESSAGE(fs::exists(d1 / name), name);
  }
  CHECK_FALSE(fs::exists(d1 / "rate.svg"));

  const std::string report = slurp(d1 / "report.json");
  CHECK(contains(report, "\"dpt_present\": true"));
  CHECK(contains(report, "\"finite_size_verdict\": \"robust\""));

  const fs::path d2 = fresh_dir("quench_run2");
  const auto r2 = run_cli("quench --preset quench-i --workers 1 --out " +
                              quoted(d2.string()),
                          "quench2");
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(d1 / "trace.csv") == slurp(d2 / "trace.csv"));
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));

  // --svg adds the plots without touching the numeric outputs.
  const fs::path d3 = fresh_dir("quench_run3");
  const auto r3 = run_cli("quench --preset quench-i --workers 1 --svg --out " +
                              quoted(d3.string()),
                          "quench3");
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp(d1 / "trace.csv") == slurp(d3 / "trace.csv"));
  for (const char* name : {"rate.svg", "pgp.svg"}) {
    REQUIRE(fs::exists(d3 / name));
    CHECK(contains(slurp(d3 / name), "<svg"));
  }
}

TEST_CASE("effective_config_roundtrip") {
  const fs::path d1 = fresh_dir("rt_run1");
  const auto r1 = run_cli("quench --preset quench-i --workers 1 --out " +
                              quoted(d1.string()),
                          "rt1");
  REQUIRE(r1.exit_code == 0);

  const fs::path d2 = fresh_dir("rt_run2");
  const auto r2 = run_cli(
      "quench --config " + quoted((d1 / "effective_config.json").string()) +
          " --workers 1 --out " + quoted(d2.string()),
      "rt2");
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(d1 / "trace.csv") == slurp(d2 / "trace.csv"));
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
}

TEST_CASE("quench_ii_reports_no_dpt") {
  const fs::path dir = fresh_dir("quench_ii");
  const auto r = run_cli("quench --preset quench-ii --workers 1 --out " +
                             quoted(dir.string()),
                         "quench_ii_run");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "dpt_present: false"));
  CHECK(contains(r.out, "critical times (ms): (none)"));
  // Zero-mode overlap keeps |G| >= 2|c0|^2 - 1 ~ 0.79 for hoppings (10, 30).
  CHECK(contains(r.out, "min |G|: 0.792942"));
}

TEST_CASE("disorder_zero_strength_has_zero_spread") {
  const fs::path dir = fresh_dir("disorder_zero");
  spit(dir / "cfg.json",
       "{\"strengths_hz\": [0, 8], \"samples_per_strength\": 3,"
       " \"trace_points\": 201, \"write_traces\": false, \"seed\": 7}\n");
  const auto r = run_cli("disorder --config " +
                             quoted((dir / "cfg.json").string()) +
                             " --workers 1 --out " + quoted(dir.string()),
                         "disorder_zero_run");
  REQUIRE(r.exit_code == 0);
  CHECK_FALSE(fs::exists(dir / "traces"));

  const auto samples = lines_of(slurp(dir / "samples.csv"));
  REQUIRE(samples.size() == 7);  // header + 2 strengths x 3 samples
  CHECK(contains(samples[0], "tc1_ms"));
  for (std::size_t i = 1; i <= 3; ++i) {
    const auto row = row_values(samples[i]);
    REQUIRE(row.size() == 6);
    CHECK(row[1] == 0.0);            // strength
    CHECK(row[5] == 1.0);            // clean trivial quench always jumps
    CHECK(row[3] == doctest::Approx(8.45387).epsilon(1e-4));
  }

  const auto stats = lines_of(slurp(dir / "stats.csv"));
  REQUIRE(stats.size() == 3);  // header + one row per strength
  const auto zero_row = row_values(stats[1]);
  REQUIRE(zero_row.size() == 4);
  CHECK(zero_row[0] == 0.0);
  CHECK(zero_row[1] == 3.0);
  CHECK(zero_row[3] == 0.0);  // identical chains, identical critical times
  const auto eight_row = row_values(stats[2]);
  CHECK(eight_row[0] == 8.0);
  CHECK(eight_row[3] > 0.0);
}

TEST_CASE("disorder_worker_count_does_not_change_results") {
  const std::string cfg =
      "{\"strengths_hz\": [6], \"samples_per_strength\": 4,"
      " \"trace_points\": 101, \"write_traces\": false, \"seed\": 3}\n";
  const fs::path da = fresh_dir("disorder_w1");
  spit(da / "cfg.json", cfg);
  const auto ra = run_cli("disorder --config " +
                              quoted((da / "cfg.json").string()) +
                              " --workers 1 --out " + quoted(da.string()),
                          "disorder_w1_run");
  REQUIRE(ra.exit_code == 0);

  const fs::path db = fresh_dir("disorder_w2");
  spit(db / "cfg.json", cfg);
  const auto rb = run_cli("disorder --config " +
                              quoted((db / "cfg.json").string()) +
                              " --workers 2 --out " + quoted(db.string()),
                          "disorder_w2_run");
  REQUIRE(rb.exit_code == 0);

  CHECK(slurp(da / "samples.csv") == slurp(db / "samples.csv"));
  CHECK(slurp(da / "stats.csv") == slurp(db / "stats.csv"));
}

TEST_CASE("disorder_table_rejects_strength_overrides") {
  const fs::path dir = fresh_dir("table_conflict");
  spit(dir / "cfg.json", "{\"rows\": \"table\", \"strengths_hz\": [5]}\n");
  const auto r = run_cli("disorder --config " +
                             quoted((dir / "cfg.json").string()) + " --out " +
                             quoted(dir.string()),
                         "table_conflict_run");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "conflict"));
}

TEST_CASE("sweep_grid_diagram_and_heatmap") {
  const fs::path dir = fresh_dir("sweep_grid");
  spit(dir / "cfg.json",
       "{\"mode\": \"grid\", \"unit_cells\": 8, \"window_jbt\": 2.4,"
       " \"j_a_values\": [20, 80], \"j_b_values\": [40, 60]}\n");
  const auto r = run_cli("sweep --config " +
                             quoted((dir / "cfg.json").string()) +
                             " --workers 2 --svg --out " + quoted(dir.string()),
                         "sweep_grid_run");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "grid: 2 x 2 cells"));
  CHECK(contains(r.out, "monotone rows: true"));

  const auto rows = lines_of(slurp(dir / "diagram.csv"));
  REQUIRE(rows.size() == 5);  // header + 4 cells, row-major in j_b then j_a
  CHECK(rows[0] == "j_a_hz,j_b_hz,dpt,first_tc_s");
  const double want[4][3] = {
      {20.0, 40.0, 0.0}, {80.0, 40.0, 1.0}, {20.0, 60.0, 0.0},
      {80.0, 60.0, 1.0}};
  for (int i = 0; i < 4; ++i) {
    const auto row = row_values(rows[static_cast<std::size_t>(i) + 1]);
    REQUIRE(row.size() == 4);
    CHECK(row[0] == want[i][0]);
    CHECK(row[1] == want[i][1]);
    CHECK(row[2] == want[i][2]);
    if (want[i][2] > 0.5) {
      // The per-cell window is window_jbt / j_b.
      CHECK(row[3] > 0.0);
      CHECK(row[3] <= 2.4 / want[i][1] + 1e-9);
    } else {
      CHECK(std::isnan(row[3]));
    }
  }

  const std::string svg = slurp(dir / "diagram.svg");
  CHECK(count_occurrences(svg, "class=\"cell\"") == 4);
}

TEST_CASE("sweep_boundary_smoke") {
  const fs::path dir = fresh_dir("sweep_boundary");
  spit(dir / "cfg.json",
       "{\"mode\": \"boundary\", \"unit_cells\": 8, \"j_b\": 60,"
       " \"window_jbt\": 2.4, \"ratio_tol\": 1e-3}\n");
  const auto r = run_cli("sweep --config " +
                             quoted((dir / "cfg.json").string()) +
                             " --workers 2 --out " + quoted(dir.string()),
                         "sweep_boundary_run");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "r_c = 0."));
  const std::string body = slurp(dir / "boundary.json");
  CHECK(contains(body, "\"r_c\": 0."));
  CHECK(contains(body, "\"window_jbt\": 2.4"));
  CHECK(contains(body, "\"evaluations\":"));
}

TEST_CASE("mech_custom_bank_pipeline") {
  const fs::path dir = fresh_dir("mech_two_beams");
  spit(dir / "cfg.json",
       "{\"bank\": {\"freq_khz\": [900.0, 905.0], \"q\": [100000, 90000]},"
       " \"couplings_hz\": [30], \"window_ms\": 2, \"out_points\": 101,"
       " \"window_cycles\": 15, \"record_stride\": 4, \"write_raw\": true}\n");
  const auto r = run_cli("mech --config " +
                             quoted((dir / "cfg.json").string()) +
                             " --workers 1 --out " + quoted(dir.string()),
                         "mech_run");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "integrated"));
  CHECK_FALSE(contains(r.err, "warning"));  // 5 kHz splitting is well in band

  for (const char* name : {"chain.json", "envelopes.csv", "tb_envelopes.csv",
                           "metrics.json", "raw.bin",
                           "effective_config.json"}) {
    CHECK_MESSAGE(fs::exists(dir / name), name);
  }

  const auto env_lines = lines_of(slurp(dir / "envelopes.csv"));
  REQUIRE(env_lines.size() == 102);
  CHECK(env_lines[0] == "t_s,re_psi_1,im_psi_1,re_psi_2,im_psi_2");

  // A 30 Hz exchange over 2 ms stays close to the tight-binding envelope.
  const std::string metrics = slurp(dir / "metrics.json");
  const auto at = metrics.find("\"linf_amp\":");
  REQUIRE(at != std::string::npos);
  const double linf = std::stod(metrics.substr(at + 11));
  CHECK(linf >= 0.0);
  CHECK(linf < 0.2);

  const dpt::RawTrajectory raw = dpt::io::read_raw((dir / "raw.bin").string());
  CHECK(raw.n_osc == 2);
  CHECK(raw.samples > 100);
  CHECK(raw.sample_dt > 0.0);
}

TEST_CASE("spectrum_chain_zero_frequency_contrast") {
  const fs::path dt = fresh_dir("spectrum_trivial");
  spit(dt / "cfg.json",
       "{\"unit_cells\": 4, \"j_intra\": 30, \"j_inter\": 10,"
       " \"f_points\": 101}\n");
  const auto rt = run_cli("spectrum --config " +
                              quoted((dt / "cfg.json").string()) + " --out " +
                              quoted(dt.string()),
                          "spectrum_trivial_run");
  REQUIRE(rt.exit_code == 0);
  CHECK(contains(rt.out, "zero-frequency response: 0.00124"));

  const fs::path dtopo = fresh_dir("spectrum_topological");
  spit(dtopo / "cfg.json",
       "{\"unit_cells\": 4, \"j_intra\": 10, \"j_inter\": 30,"
       " \"f_points\": 101}\n");
  const auto rtopo = run_cli("spectrum --config " +
                                 quoted((dtopo / "cfg.json").string()) +
                                 " --out " + quoted(dtopo.string()),
                             "spectrum_topological_run");
  REQUIRE(rtopo.exit_code == 0);
  CHECK(contains(rtopo.out, "zero-frequency response: 0.8027"));

  const auto rows = lines_of(slurp(dtopo / "spectrum.csv"));
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "f_hz,s_1");
}

TEST_CASE("spectrum_bank_columns") {
  const fs::path dir = fresh_dir("spectrum_bank");
  spit(dir / "cfg.json",
       "{\"mode\": \"bank\","
       " \"bank\": {\"freq_khz\": [900.0, 905.0], \"q\": [100000, 90000]},"
       " \"bank_points\": 101}\n");
  const auto r = run_cli("spectrum --config " +
                             quoted((dir / "cfg.json").string()) + " --out " +
                             quoted(dir.string()),
                         "spectrum_bank_run");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "bank spectrum: 2 beams"));

  const auto rows = lines_of(slurp(dir / "spectrum.csv"));
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "f_hz,s_1,s_2");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto row = row_values(rows[i]);
    REQUIRE(row.size() == 3);
    CHECK(row[1] >= 0.0);
    CHECK(row[1] <= 1.0 + 1e-12);
    CHECK(row[2] >= 0.0);
    CHECK(row[2] <= 1.0 + 1e-12);
  }
}

TEST_CASE("svg_line_plot_invariants") {
  const double nan = std::nan("");

  dpt::svg::LinePlot two;
  two.series.push_back({"a", {0.0, 1.0}, {2.0, 3.0}, false});
  CHECK(count_occurrences(dpt::svg::render_line_svg(two), "<polyline") == 1);

  // Non-finite samples split a series into separate segments.
  dpt::svg::LinePlot split;
  split.series.push_back({"a", {0.0, 1.0, 2.0, 3.0, 4.0},
                          {0.0, 1.0, nan, 2.0, 3.0}, false});
  CHECK(count_occurrences(dpt::svg::render_line_svg(split), "<polyline") == 2);

  // Staircase mode inserts a flat step point before each new level:
  // n points become 2n-1 coordinate pairs.
  auto pairs_in_first_polyline = [](const std::string& svg) {
    const auto at = svg.find("points=\"");
    REQUIRE(at != std::string::npos);
    const auto end = svg.find('"', at + 8);
    const std::string pts = svg.substr(at + 8, end - at - 8);
    return count_occurrences(pts, ",");
  };
  dpt::svg::LinePlot plain;
  plain.series.push_back({"a", {0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}, false});
  CHECK(pairs_in_first_polyline(dpt::svg::render_line_svg(plain)) == 3);
  dpt::svg::LinePlot stairs = plain;
  stairs.series[0].staircase = true;
  CHECK(pairs_in_first_polyline(dpt::svg::render_line_svg(stairs)) == 5);

  dpt::svg::LinePlot empty;
  CHECK_THROWS(dpt::svg::render_line_svg(empty));
  dpt::svg::LinePlot empty_series;
  empty_series.series.push_back({"a", {}, {}, false});
  CHECK_THROWS(dpt::svg::render_line_svg(empty_series));
  dpt::svg::LinePlot mismatch;
  mismatch.series.push_back({"a", {0.0, 1.0}, {0.0}, false});
  CHECK_THROWS(dpt::svg::render_line_svg(mismatch));
  dpt::svg::LinePlot all_nan;
  all_nan.series.push_back({"a", {0.0, 1.0}, {nan, nan}, false});
  CHECK_THROWS(dpt::svg::render_line_svg(all_nan));
}

TEST_CASE("svg_heatmap_invariants") {
  dpt::svg::Heatmap map;
  map.x = {1.0, 2.0, 3.0};
  map.y = {10.0, 20.0};
  map.value = {0.0, 0.5, 1.0, 1.0, 0.5, 0.0};
  const std::string svg = dpt::svg::render_heatmap_svg(map);
  CHECK(count_occurrences(svg, "class=\"cell\"") == 6);
  CHECK(contains(svg, "<svg"));

  dpt::svg::Heatmap bad = map;
  bad.value.pop_back();
  CHECK_THROWS(dpt::svg::render_heatmap_svg(bad));
}

TEST_CASE("raw_trajectory_roundtrip_and_validation") {
  const fs::path dir = fresh_dir("raw_io");
  const std::string path = (dir / "traj.bin").string();

  dpt::RawTrajectory raw;
  raw.n_osc = 2;
  raw.samples = 5;
  raw.dt = 1e-6;
  raw.sample_dt = 1e-6;
  raw.z = {0.0, 1.5, -2.25, 3.125, -4.0625,
           1e-12, -1e-12, 0.5, 0.25, 0.125};
  dpt::io::write_raw(path, raw);

  const dpt::RawTrajectory back = dpt::io::read_raw(path);
  CHECK(back.n_osc == raw.n_osc);
  CHECK(back.samples == raw.samples);
  CHECK(back.sample_dt == raw.sample_dt);
  REQUIRE(back.z.size() == raw.z.size());
  for (std::size_t i = 0; i < raw.z.size(); ++i) CHECK(back.z[i] == raw.z[i]);

  // Corrupt magic.
  std::string body = slurp(path);
  body[0] = 'X';
  spit(dir / "bad_magic.bin", body);
  CHECK_THROWS(dpt::io::read_raw((dir / "bad_magic.bin").string()));

  // Unsupported version (little-endian u32 at offset 8).
  body = slurp(path);
  body[8] = 2;
  spit(dir / "bad_version.bin", body);
  CHECK_THROWS(dpt::io::read_raw((dir / "bad_version.bin").string()));

  CHECK_THROWS(dpt::io::read_raw((dir / "missing.bin").string()));
}
