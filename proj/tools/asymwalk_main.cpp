// asymwalk command line: run experiment configs and self-check suites.
#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "asymwalk/asymwalk.h"

namespace {

int report_failure(asymwalk_status s) {
  std::fprintf(stderr, "error (%s): %s\n", asymwalk_status_name(s), asymwalk_last_error());
  switch (s) {
    case ASYMWALK_INTERNAL: return 1;
    case ASYMWALK_BUDGET_EXHAUSTED:
    case ASYMWALK_OVERFLOW:
    case ASYMWALK_INCONCLUSIVE: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks on free groups with asymmetric word metrics"};
  app.set_version_flag("--version", std::string(asymwalk_version()));
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  unsigned threads = 0;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config and write its artifacts");
  run->add_option("config", config, "Experiment config (JSON)")->required();
  run->add_option("--threads", threads, "Worker threads (0: one per core)");
  run->add_option("--out", out_dir, "Output directory (overrides the config)");

  std::string suite;
  std::string schottky;
  std::string weights;
  CLI::App* verify = app.add_subcommand("verify", "Run self-check suites and print JSON lines");
  verify->add_option("suite", suite, "metric, geometry, walks, stats, outer or all")->required();
  verify->add_option("--schottky", schottky, "Check this Schottky set instead of searching for one");
  verify->add_option("--weights", weights, "Weight file (JSON) for the tree metric");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int exit_code = 0;
  asymwalk_status s = ASYMWALK_OK;
  if (*run) {
    s = asymwalk_run(config.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), threads, &exit_code);
  } else if (*verify) {
    s = asymwalk_verify(suite.c_str(), schottky.empty() ? nullptr : schottky.c_str(),
                        weights.empty() ? nullptr : weights.c_str(), &exit_code);
  }
  if (s != ASYMWALK_OK) return report_failure(s);
  return exit_code;
}
