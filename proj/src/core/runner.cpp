#include "runner.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <ostream>

#include "dp_oracle.hpp"
#include "limit_stats.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "walk.hpp"

#ifndef ASYMWALK_VERSION
#define ASYMWALK_VERSION "0.0.0"
#endif

namespace asymwalk {

const char* library_version() noexcept { return ASYMWALK_VERSION; }

namespace {

constexpr std::pair<ExperimentKind, const char*> kKinds[] = {
    {ExperimentKind::drift, "drift"},           {ExperimentKind::clt, "clt"},
    {ExperimentKind::lil, "lil"},               {ExperimentKind::ldp, "ldp"},
    {ExperimentKind::discrepancy, "discrepancy"}, {ExperimentKind::genericity, "genericity"},
    {ExperimentKind::tracking, "tracking"},     {ExperimentKind::asymmetry, "asymmetry"},
    {ExperimentKind::schottky, "schottky"},     {ExperimentKind::bgip, "bgip"},
    {ExperimentKind::outer, "outer"},
};

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::invalid_argument, what); }

// Parameters each kind accepts inside "params".
std::vector<const char*> allowed_params(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::drift: return {"exact"};
    case ExperimentKind::clt: return {};
    case ExperimentKind::lil: return {"n_max"};
    case ExperimentKind::ldp: return {"L", "exact"};
    case ExperimentKind::discrepancy: return {"p"};
    case ExperimentKind::genericity: return {"L"};
    case ExperimentKind::tracking: return {"p"};
    case ExperimentKind::asymmetry: return {"K"};
    case ExperimentKind::schottky: return {"cardinality", "length_min", "length_max", "K0", "require_fairly_long"};
    case ExperimentKind::bgip: return {"generator", "base", "window", "exhaustive_radius", "sample_radius", "samples"};
    case ExperimentKind::outer: return {"K", "growth_tol", "low_confidence_limit"};
  }
  return {};
}

bool uses_tree(ExperimentKind k) { return k != ExperimentKind::outer; }
bool uses_measure(ExperimentKind k) { return k != ExperimentKind::outer && k != ExperimentKind::bgip; }
bool uses_n_list(ExperimentKind k) {
  return k != ExperimentKind::lil && k != ExperimentKind::bgip;
}

std::uint64_t read_uint(const Json& j, const char* where) {
  if (!j.is_number_integer() || (j.is_number_integer() && j.get<std::int64_t>() < 0 && !j.is_number_unsigned())) {
    bad(std::string(where) + ": expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

double param_number(const ExperimentConfig& c, const char* key, std::optional<double> fallback = std::nullopt) {
  const auto it = c.params.find(key);
  if (it == c.params.end()) {
    if (fallback) return *fallback;
    bad(std::string("params: missing '") + key + "' for experiment " + experiment_kind_name(c.kind));
  }
  if (!it->is_number()) bad(std::string("params.") + key + ": expected a number");
  return it->get<double>();
}

bool param_bool(const ExperimentConfig& c, const char* key, bool fallback) {
  const auto it = c.params.find(key);
  if (it == c.params.end()) return fallback;
  if (!it->is_boolean()) bad(std::string("params.") + key + ": expected a boolean");
  return it->get<bool>();
}

std::uint64_t budget(const ExperimentConfig& c, const char* key, std::uint64_t fallback) {
  const auto it = c.budgets.find(key);
  return it == c.budgets.end() ? fallback : read_uint(*it, (std::string("budgets.") + key).c_str());
}

std::optional<std::uint64_t> parse_seed_text(const char* text) {
  std::uint64_t v = 0;
  const std::string s(text);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Scoped process-wide settings; restored on every exit path.
class WordCapGuard {
 public:
  explicit WordCapGuard(std::size_t cap) : saved_(word_length_cap()) { set_word_length_cap(cap); }
  ~WordCapGuard() { set_word_length_cap(saved_); }
  WordCapGuard(const WordCapGuard&) = delete;
  WordCapGuard& operator=(const WordCapGuard&) = delete;

 private:
  std::size_t saved_;
};

class ThreadGuard {
 public:
  explicit ThreadGuard(unsigned n) : saved_(thread_count()) { set_thread_count(n); }
  ~ThreadGuard() { set_thread_count(saved_); }
  ThreadGuard(const ThreadGuard&) = delete;
  ThreadGuard& operator=(const ThreadGuard&) = delete;

 private:
  unsigned saved_;
};

}  // namespace

const char* experiment_kind_name(ExperimentKind k) noexcept {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "?";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::budget_exhausted:
    case ErrorCode::overflow:
    case ErrorCode::inconclusive:
      return 3;
    default:
      return 2;
  }
}

// ---- config -----------------------------------------------------------------------

ExperimentConfig parse_config(const Json& j, std::optional<std::uint64_t> env_seed) {
  reject_unknown_keys(j,
                      {"experiment", "id", "seed", "model", "measure", "generators", "generator_probabilities",
                       "n_list", "trials", "params", "budgets", "output"},
                      "config");
  ExperimentConfig c;
  const auto kind_it = j.find("experiment");
  if (kind_it == j.end() || !kind_it->is_string()) bad("config: 'experiment' must name an experiment kind");
  bool found = false;
  for (const auto& [kind, name] : kKinds) {
    if (*kind_it == name) {
      c.kind = kind;
      found = true;
    }
  }
  if (!found) bad("config: unknown experiment '" + kind_it->get<std::string>() + "'");
  c.id = experiment_kind_name(c.kind);
  if (const auto it = j.find("id"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>().empty()) bad("config.id: expected a non-empty string");
    c.id = it->get<std::string>();
    if (c.id.find_first_of("/\\") != std::string::npos) bad("config.id: must not contain path separators");
  }

  const auto seed_it = j.find("seed");
  if (seed_it == j.end()) bad("config: 'seed' is mandatory");
  c.seed = read_uint(*seed_it, "config.seed");
  if (env_seed) {
    c.seed = *env_seed;
    c.seed_source = "ASYMWALK_SEED";
  }

  if (const auto it = j.find("model"); it != j.end()) {
    if (!uses_tree(c.kind)) bad("config.model: not used by experiment " + std::string(experiment_kind_name(c.kind)));
    c.weights = weights_from_json(*it);
  }
  if (const auto it = j.find("measure"); it != j.end()) {
    if (!uses_measure(c.kind)) bad("config.measure: not used by experiment " + std::string(experiment_kind_name(c.kind)));
    c.measure = measure_from_json(*it);
    if (c.measure->rank() != c.weights.rank()) fail(ErrorCode::rank_mismatch, "config: measure and model ranks differ");
  } else if (uses_measure(c.kind)) {
    c.measure = MeasureSpec::uniform_letters(c.weights.rank(), true);
  }

  if (const auto it = j.find("generators"); it != j.end()) {
    if (c.kind != ExperimentKind::outer) bad("config.generators: only used by experiment outer");
    if (it->is_string()) {
      if (*it != "default") bad("config.generators: expected \"default\" or a list");
      c.generators = default_outer_generators().elements;
    } else {
      reject_unknown_keys(*it, {"rank", "list"}, "generators");
      const auto rank = it->find("rank");
      const auto list = it->find("list");
      if (rank == it->end() || list == it->end()) bad("generators: needs 'rank' and 'list'");
      c.generators = automorphisms_from_json(static_cast<int>(read_uint(*rank, "generators.rank")), *list);
    }
  } else if (c.kind == ExperimentKind::outer) {
    c.generators = default_outer_generators().elements;
  }
  if (const auto it = j.find("generator_probabilities"); it != j.end()) {
    if (c.kind != ExperimentKind::outer) bad("config.generator_probabilities: only used by experiment outer");
    if (!it->is_array()) bad("config.generator_probabilities: expected an array");
    for (const auto& p : *it) {
      if (!p.is_number()) bad("config.generator_probabilities: expected numbers");
      c.generator_probabilities.push_back(p.get<double>());
    }
  }

  if (const auto it = j.find("n_list"); it != j.end()) {
    if (!uses_n_list(c.kind)) bad("config.n_list: not used by experiment " + std::string(experiment_kind_name(c.kind)));
    if (!it->is_array() || it->empty()) bad("config.n_list: expected a non-empty array");
    for (const auto& n : *it) c.n_list.push_back(static_cast<std::size_t>(read_uint(n, "config.n_list")));
  } else if (uses_n_list(c.kind) && c.kind != ExperimentKind::schottky) {
    bad("config: 'n_list' is required for experiment " + std::string(experiment_kind_name(c.kind)));
  }
  if (const auto it = j.find("trials"); it != j.end()) {
    c.trials = static_cast<std::size_t>(read_uint(*it, "config.trials"));
  }
  const bool needs_trials = c.kind != ExperimentKind::bgip && c.kind != ExperimentKind::schottky &&
                            c.kind != ExperimentKind::ldp;
  if (needs_trials && c.trials == 0) {
    bad("config: 'trials' must be positive for experiment " + std::string(experiment_kind_name(c.kind)));
  }

  if (const auto it = j.find("params"); it != j.end()) {
    const auto allowed = allowed_params(c.kind);
    reject_unknown_keys(*it, allowed, "params");
    c.params = *it;
  }
  if (const auto it = j.find("budgets"); it != j.end()) {
    reject_unknown_keys(*it, {"word_cap", "candidates", "growth_iterations"}, "budgets");
    c.budgets = *it;
    for (const auto& [k, v] : it->items()) read_uint(v, ("budgets." + k).c_str());
  }
  if (const auto it = j.find("output"); it != j.end()) {
    reject_unknown_keys(*it, {"dir"}, "output");
    const auto dir = it->find("dir");
    if (dir != it->end()) {
      if (!dir->is_string()) bad("output.dir: expected a string");
      c.out_dir = dir->get<std::string>();
    }
  }

  c.echo = j;
  c.echo["seed"] = c.seed;
  return c;
}

// ---- artifacts ---------------------------------------------------------------------

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, p) : std::string("nan");
}

void write_results_csv(std::ostream& out, const std::string& id, const std::vector<StatRow>& rows,
                       std::uint64_t seed) {
  out << "experiment_id,n,statistic,trials,value,ci_low,ci_high,seed\n";
  for (const auto& r : rows) {
    out << id << ',' << r.n << ',' << r.statistic << ',' << r.trials << ',' << format_number(r.value) << ','
        << format_number(r.ci_low) << ',' << format_number(r.ci_high) << ',' << seed << '\n';
  }
}

namespace {

struct Outcome {
  std::vector<StatRow> rows;
  Json summary = Json::object();
  // Extra plot-ready tables: (suffix, writer).
  std::vector<std::pair<std::string, std::string>> tables;
  std::optional<Json> schottky;
};

Json rows_json(const std::vector<StatRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n}, {"statistic", r.statistic}, {"value", r.value}});
  }
  return out;
}

Json certificate_json(const Certificate& c) {
  return {{"holds", c.holds}, {"power", c.power}, {"g", c.g.str()}, {"h", c.h.str()}, {"note", c.note}};
}

Outcome run_tree_experiment(const ExperimentConfig& c) {
  Outcome o;
  const MeasureSpec& mu = *c.measure;
  const WeightScheme& ws = c.weights;
  switch (c.kind) {
    case ExperimentKind::drift: {
      const bool exact = param_bool(c, "exact", false);
      for (std::size_t n : c.n_list) {
        const DriftSummary d = estimate_drift(mu, n, c.trials, ws, c.seed);
        const auto r = d.rows();
        o.rows.insert(o.rows.end(), r.begin(), r.end());
        if (exact) o.rows.push_back(point_row(n, "lambda_exact", 0, exact_drift(mu, n, ws)));
        o.summary["certificate"] = certificate_json(d.certificate);
      }
      break;
    }
    case ExperimentKind::clt:
      for (std::size_t n : c.n_list) {
        const auto r = clt_diagnostics(mu, n, c.trials, ws, c.seed).rows();
        o.rows.insert(o.rows.end(), r.begin(), r.end());
      }
      break;
    case ExperimentKind::lil: {
      const auto n_max = static_cast<std::size_t>(param_number(c, "n_max"));
      const LilSummary s = lil_scan(mu, n_max, c.trials, ws, c.seed);
      o.rows = s.rows();
      std::string table = "n,envelope,envelope_tau\n";
      for (std::size_t k = 0; k < s.checkpoints.size(); ++k) {
        table += std::to_string(s.checkpoints[k]) + ',' + format_number(s.envelope[k]) + ',' +
                 format_number(s.envelope_tau[k]) + '\n';
      }
      o.tables.emplace_back("envelope", table);
      break;
    }
    case ExperimentKind::ldp: {
      const bool exact = param_bool(c, "exact", c.trials == 0);
      if (!exact && c.trials == 0) bad("ldp: Monte Carlo needs positive 'trials'");
      const LdpSummary s = ldp_tail(mu, param_number(c, "L"), c.n_list, exact ? 0 : c.trials, ws, c.seed);
      o.rows = s.rows();
      o.summary["exact"] = s.exact;
      std::string table = "x,rate\n";
      for (std::size_t k = 0; k < s.profile.grid.size(); ++k) {
        table += format_number(s.profile.grid[k]) + ',' + format_number(s.profile.rate[k]) + '\n';
      }
      o.tables.emplace_back("rate", table);
      break;
    }
    case ExperimentKind::discrepancy: {
      const DiscrepancySummary s = discrepancy_scan(mu, c.n_list, c.trials, param_number(c, "p", 1.0), ws, c.seed);
      o.rows = s.rows();
      o.summary["q99_decreasing"] = s.q99_decreasing;
      break;
    }
    case ExperimentKind::genericity: {
      const GenericitySummary s = genericity_scan(mu, param_number(c, "L"), c.n_list, c.trials, ws, c.seed);
      o.rows = s.rows();
      o.summary["log_failure_decreasing"] = s.decreasing;
      break;
    }
    case ExperimentKind::tracking:
      for (std::size_t n : c.n_list) {
        const auto r = tracking_scan(mu, n, c.trials, param_number(c, "p", 1.0), ws, c.seed).rows();
        o.rows.insert(o.rows.end(), r.begin(), r.end());
      }
      break;
    case ExperimentKind::asymmetry: {
      const AsymmetrySummary s = asymmetry_test(mu, param_number(c, "K"), c.n_list, c.trials, ws, c.seed);
      o.rows = s.rows();
      o.summary["certificate"] = certificate_json(s.certificate);
      o.summary["strictly_decreasing"] = s.strictly_decreasing;
      o.summary["halved"] = s.halved;
      break;
    }
    case ExperimentKind::schottky: {
      FindOptions f;
      f.budget = budget(c, "candidates", f.budget);
      f.seed = c.seed;
      f.K0 = param_number(c, "K0", 0.0);
      f.require_fairly_long = param_bool(c, "require_fairly_long", false);
      const auto card = static_cast<std::size_t>(param_number(c, "cardinality", 4.0));
      const LengthRange lengths{static_cast<std::size_t>(param_number(c, "length_min", 3.0)),
                                static_cast<std::size_t>(param_number(c, "length_max", 8.0))};
      const SchottkySet S = find_schottky(mu, card, lengths, ws, f);
      o.schottky = schottky_to_json(S);
      o.rows = {point_row(0, "M0", 0, static_cast<double>(S.M0)), point_row(0, "K0", 0, S.K0),
                point_row(0, "D0", 0, S.D0),  point_row(0, "D1", 0, S.D1),
                point_row(0, "E0", 0, S.E0),
                point_row(0, "candidates_examined", 0, static_cast<double>(S.log.candidates_examined))};
      // Witness counts along fresh paths, one row per n.
      if (c.trials > 0) {
        for (std::size_t n : c.n_list) {
          const auto counts = parallel_map<double>(c.trials, [&](std::size_t t) {
            const SamplePath p = sample_path(mu, n, c.seed, t, false, ws);
            return static_cast<double>(extract_witnesses(p, mu, S, ws).indices.size());
          });
          o.rows.push_back(mean_row(n, "witness_count", moments(counts)));
        }
      }
      break;
    }
    case ExperimentKind::bgip: {
      const auto git = c.params.find("generator");
      if (git == c.params.end() || !git->is_string()) bad("params.generator: expected a word");
      const Word g = Word::parse(ws.rank(), git->get<std::string>());
      Word base(ws.rank());
      if (const auto b = c.params.find("base"); b != c.params.end()) base = Word::parse(ws.rank(), b->get<std::string>());
      Window w{-4, 4};
      if (const auto win = c.params.find("window"); win != c.params.end()) {
        if (!win->is_array() || win->size() != 2) bad("params.window: expected [lo, hi]");
        w = {(*win)[0].get<long>(), (*win)[1].get<long>()};
      }
      GeodesicSampler sampler;
      sampler.exhaustive_radius = static_cast<int>(param_number(c, "exhaustive_radius", sampler.exhaustive_radius));
      sampler.sample_radius = static_cast<int>(param_number(c, "sample_radius", sampler.sample_radius));
      sampler.samples = static_cast<std::size_t>(param_number(c, "samples", static_cast<double>(sampler.samples)));
      sampler.seed = c.seed;
      const BgipReport r = bgip_constant(axis_of(g, base, w, ws), sampler, ws);
      o.rows = {point_row(0, "K", 0, r.K), point_row(0, "measured", 0, r.measured),
                point_row(0, "exhaustive", static_cast<std::size_t>(r.exhaustive_geodesics), r.exhaustive),
                point_row(0, "sampled", r.sampled_geodesics, r.sampled)};
      o.summary["status"] = r.status == MeasureStatus::ok ? "ok" : "inconclusive";
      break;
    }
    case ExperimentKind::outer:
      break;
  }
  return o;
}

Outcome run_outer(const ExperimentConfig& c) {
  Outcome o;
  GeneratingSet gens{c.generators, c.generator_probabilities};
  OuterOptions opt;
  opt.n_list = c.n_list;
  opt.trials = c.trials;
  opt.seed = c.seed;
  if (const auto k = c.params.find("K"); k != c.params.end()) {
    opt.K.clear();
    if (k->is_number()) {
      opt.K.push_back(k->get<double>());
    } else if (k->is_array() && !k->empty()) {
      for (const auto& v : *k) opt.K.push_back(v.get<double>());
    } else {
      bad("params.K: expected a number or a list");
    }
  }
  opt.growth.tol = param_number(c, "growth_tol", opt.growth.tol);
  opt.growth.budget = static_cast<std::size_t>(budget(c, "word_cap", opt.growth.budget));
  opt.growth.max_iterations = static_cast<std::size_t>(budget(c, "growth_iterations", opt.growth.max_iterations));
  opt.low_confidence_limit = param_number(c, "low_confidence_limit", opt.low_confidence_limit);
  const OuterSummary s = outer_walk_experiment(gens, opt);
  o.rows = s.stat_rows();
  std::ostringstream trials;
  write_outer_csv(trials, s);
  o.tables.emplace_back("trials", trials.str());
  o.summary["low_confidence_fraction"] = s.low_confidence_fraction;
  o.summary["flagged_low_confidence"] = s.flagged;
  o.summary["non_increasing"] = s.non_increasing;
  o.summary["final_below_initial"] = s.final_below_initial;
  o.summary["generators"] = automorphisms_to_json(c.generators);
  return o;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::io, "cannot write '" + path.string() + "'");
  f << text;
  if (!f) fail(ErrorCode::io, "write failed for '" + path.string() + "'");
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& c, std::ostream& err) {
  RunReport report;
  const WordCapGuard cap(static_cast<std::size_t>(budget(c, "word_cap", kDefaultWordCap)));
  Outcome o = c.kind == ExperimentKind::outer ? run_outer(c) : run_tree_experiment(c);

  const std::filesystem::path dir(c.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create output directory '" + dir.string() + "'");

  std::ostringstream csv;
  write_results_csv(csv, c.id, o.rows, c.seed);
  const auto csv_path = dir / (c.id + ".csv");
  write_file(csv_path, csv.str());
  report.artifacts.push_back(csv_path.string());

  for (const auto& [suffix, text] : o.tables) {
    const auto p = dir / (c.id + "." + suffix + ".csv");
    write_file(p, text);
    report.artifacts.push_back(p.string());
  }
  if (o.schottky) {
    const auto p = dir / (c.id + ".schottky.json");
    write_file(p, o.schottky->dump(2) + "\n");
    report.artifacts.push_back(p.string());
  }

  Json summary = {{"experiment_id", c.id},
                  {"experiment", experiment_kind_name(c.kind)},
                  {"library_version", library_version()},
                  {"rng", kRngId},
                  {"seed", c.seed},
                  {"seed_source", c.seed_source},
                  {"config", c.echo},
                  {"results", rows_json(o.rows)},
                  {"details", o.summary}};
  if (c.measure) summary["measure"] = measure_to_json(*c.measure);
  if (c.kind != ExperimentKind::outer) summary["weights"] = weights_to_json(c.weights);
  Json artifacts = Json::array();
  for (const auto& a : report.artifacts) artifacts.push_back(std::filesystem::path(a).filename().string());
  summary["artifacts"] = artifacts;
  const auto summary_path = dir / (c.id + ".summary.json");
  write_file(summary_path, summary.dump(2) + "\n");
  report.artifacts.push_back(summary_path.string());
  if (o.summary.contains("flagged_low_confidence") && o.summary["flagged_low_confidence"].get<bool>()) {
    err << "warning: more than the configured fraction of growth estimates are low-confidence\n";
  }
  return report;
}

RunReport run_config_file(const std::string& path, const RunOptions& options, std::ostream& err) {
  RunReport report;
  try {
    std::optional<std::uint64_t> env_seed;
    if (const char* s = std::getenv("ASYMWALK_SEED")) {
      env_seed = parse_seed_text(s);
      if (!env_seed) bad(std::string("ASYMWALK_SEED is not a nonnegative integer: '") + s + "'");
    }
    ExperimentConfig c = parse_config(read_json_file(path), env_seed);
    if (env_seed) err << "seed overridden by ASYMWALK_SEED: " << c.seed << '\n';
    if (options.out_dir) c.out_dir = *options.out_dir;
    const ThreadGuard threads(options.threads);
    report = run_experiment(c, err);
  } catch (const Error& e) {
    err << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
    report.exit_code = e.code() == ErrorCode::io ? 2 : exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error (invalid_argument): " << e.what() << '\n';
    report.exit_code = 2;
  }
  return report;
}

}  // namespace asymwalk
