#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "cli_run.hpp"

namespace {

struct SubArgs {
  CLI::App* sub = nullptr;
  std::string config;
  std::string preset;
  std::string out = "out";
  int workers = 0;
  bool svg = false;
};

void add_common_options(SubArgs& a) {
  a.sub->add_option("--config", a.config,
                    "JSON config file; overlays the preset, unknown keys "
                    "are fatal");
  a.sub->add_option("--preset", a.preset, "embedded preset name");
  a.sub->add_option("--out", a.out, "output directory")
      ->capture_default_str();
  a.sub->add_option("--workers", a.workers,
                    "worker threads (overrides DPTSIM_WORKERS and config)");
  a.sub->add_flag("--svg", a.svg, "also write SVG plots");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dptsim: quench dynamics of hopping chains, dynamical phase "
      "diagrams, and the coupled-oscillator replica"};
  app.set_version_flag("--version", "dptsim 1.0");
  app.require_subcommand(1);
  std::string footer =
      "Worker precedence: --workers, then DPTSIM_WORKERS, then the config "
      "\"workers\" key, then hardware concurrency.\nPresets:";
  for (const auto& name : dpt::cli::preset_names()) footer += " " + name;
  app.footer(footer);

  SubArgs args[5];
  const char* names[5] = {"quench", "disorder", "sweep", "mech", "spectrum"};
  const char* blurbs[5] = {
      "evolve an initial state under a quenched chain; report rate "
      "function, geometric phase and critical times",
      "run an ensemble of disordered quenches and summarize critical-time "
      "statistics",
      "locate the dynamical phase boundary by bisection, trace it vs the "
      "initial ratio, or scan a coupling grid",
      "integrate the classical oscillator bank, demodulate envelopes and "
      "compare against the tight-binding evolution",
      "site response spectrum of a chain, or carrier spectra of an "
      "oscillator bank"};
  for (int i = 0; i < 5; ++i) {
    args[i].sub = app.add_subcommand(names[i], blurbs[i]);
    add_common_options(args[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 5; ++i) {
    if (!args[i].sub->parsed()) continue;
    try {
      const dpt::cli::json cfg = dpt::cli::load_run_config(
          names[i], args[i].preset, args[i].config);
      dpt::cli::RunContext ctx;
      ctx.out_dir = args[i].out;
      ctx.svg = args[i].svg;
      ctx.workers = dpt::cli::resolve_worker_count(
          args[i].sub->count("--workers") > 0, args[i].workers,
          std::getenv("DPTSIM_WORKERS"), dpt::cli::config_worker_hint(cfg));
      switch (i) {
        case 0: return dpt::cli::run_quench(cfg, ctx);
        case 1: return dpt::cli::run_disorder(cfg, ctx);
        case 2: return dpt::cli::run_sweep(cfg, ctx);
        case 3: return dpt::cli::run_mech(cfg, ctx);
        default: return dpt::cli::run_spectrum(cfg, ctx);
      }
    } catch (const dpt::cli::ConfigError& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      return 2;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 0;
}
