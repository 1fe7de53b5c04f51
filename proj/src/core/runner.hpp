#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace asymwalk {

const char* library_version() noexcept;

enum class ExperimentKind { drift, clt, lil, ldp, discrepancy, genericity, tracking, asymmetry, schottky, bgip, outer };

const char* experiment_kind_name(ExperimentKind k) noexcept;

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::drift;
  std::string id;
  std::uint64_t seed = 0;
  std::string seed_source = "config";
  WeightScheme weights = WeightScheme::uniform(2);
  std::optional<MeasureSpec> measure;        // tree kinds
  std::vector<Automorphism> generators;      // outer
  std::vector<double> generator_probabilities;
  std::vector<std::size_t> n_list;
  std::size_t trials = 0;
  Json params = Json::object();
  Json budgets = Json::object();
  std::string out_dir = ".";
  Json echo;  // the validated config, seed as used
};

// Schema validation: unknown fields are rejected at every level, the seed is
// mandatory. env_seed (from ASYMWALK_SEED) replaces the configured value.
ExperimentConfig parse_config(const Json& j, std::optional<std::uint64_t> env_seed = std::nullopt);

// 0 success, 2 validation error, 3 budget exhausted; anything else unexpected.
int exit_code_for(ErrorCode code) noexcept;

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides the config
  unsigned threads = 0;                // 0: one per core
};

struct RunReport {
  int exit_code = 0;
  std::vector<std::string> artifacts;
};

// Reads the config, runs the experiment, writes <id>.csv and <id>.summary.json
// (plus kind-specific tables). Messages go to `err`.
RunReport run_config_file(const std::string& path, const RunOptions& options, std::ostream& err);
RunReport run_experiment(const ExperimentConfig& config, std::ostream& err);

struct VerifyOptions {
  std::optional<std::string> weights_path;   // metric suite
  std::optional<std::string> schottky_path;  // geometry suite checks this set instead of a fresh one
};

// Suites: metric, geometry, walks, stats, outer, all. One JSON object per
// check on `out`, then a summary object. Returns 0 when every check passes,
// 1 otherwise, 2 for an unknown suite or unreadable input.
int run_verify(const std::string& suite, const VerifyOptions& options, std::ostream& out, std::ostream& err);

// Long-format results CSV; numbers use the shortest round-trip form.
void write_results_csv(std::ostream& out, const std::string& id, const std::vector<StatRow>& rows,
                       std::uint64_t seed);
std::string format_number(double v);

}  // namespace asymwalk
