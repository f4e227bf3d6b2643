#pragma once

#include <string>

#include "cli_config.hpp"

namespace dpt::cli {

struct RunContext {
  std::string out_dir = "out";
  bool svg = false;    // --svg flag; config "emit_svg" also enables it
  int workers = 1;     // resolved count (flag > env > config > hardware)
};

// Peeks the "workers" key (0 when absent) so the caller can resolve the
// worker count before the full schema validation runs.
int config_worker_hint(const json& cfg);

int run_quench(const json& cfg, const RunContext& ctx);
int run_disorder(const json& cfg, const RunContext& ctx);
int run_sweep(const json& cfg, const RunContext& ctx);
int run_mech(const json& cfg, const RunContext& ctx);
int run_spectrum(const json& cfg, const RunContext& ctx);

}  // namespace dpt::cli
