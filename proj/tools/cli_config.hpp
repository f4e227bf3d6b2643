#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

// Config plumbing for the dptsim CLI: preset registry, strict key
// validation (unknown keys are fatal, exit code 2), worker resolution.

namespace dpt::cli {

using json = nlohmann::json;

// Raised for any user-facing configuration problem; the message names the
// offending key.  main() maps it to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Typed, tracked access to one config object.  Every key that is read is
// remembered; finish() rejects anything left over, so a typo like
// "window_mss" fails loudly instead of silently using a default.
class ConfigReader {
 public:
  explicit ConfigReader(json j, std::string scope = "config")
      : j_(std::move(j)), scope_(std::move(scope)) {
    if (!j_.is_object()) {
      throw ConfigError(scope_ + " must be a JSON object");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  std::uint64_t uinteger(const std::string& key, std::uint64_t fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> number_list(const std::string& key,
                                  std::vector<double> fallback);
  std::vector<int> integer_list(const std::string& key,
                                std::vector<int> fallback);
  // Marks the key as consumed and returns the raw value (object/any type).
  std::optional<json> raw(const std::string& key);

  // Throws ConfigError naming the first unconsumed key, if any.
  void finish() const;

 private:
  const json& fetch(const std::string& key);

  json j_;
  std::string scope_;
  std::set<std::string> seen_;
};

// Embedded preset table; throws ConfigError for unknown names.
json preset_config(const std::string& name);
std::vector<std::string> preset_names();

// preset (if any) overlaid by the config file (if any): file keys win.
// Validates that a "command" key, when present, matches the subcommand.
json load_run_config(const std::string& command,
                     const std::string& preset_name,
                     const std::string& config_path);

// Precedence: --workers flag > DPTSIM_WORKERS > config key > hardware.
// Returns the resolved positive worker count.
int resolve_worker_count(bool flag_given, int flag_value,
                         const char* env_value, int config_value);

}  // namespace dpt::cli
