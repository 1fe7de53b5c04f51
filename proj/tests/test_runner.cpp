#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rng.hpp"
#include "runner.hpp"
#include "support.hpp"

using namespace asymwalk;
using namespace asymwalk::testing;

namespace {

Json minimal_drift() { return Json::parse(R"({"experiment": "drift", "seed": 4, "n_list": [20], "trials": 10})"); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::io;
}

}  // namespace

TEST_SUITE("runner") {
  TEST_CASE("weights round trip") {
    const WeightScheme ws = asym_weights();
    const WeightScheme back = weights_from_json(weights_to_json(ws));
    for (Letter l : {1, -1, 2, -2}) CHECK(back.rational(l).value() == ws.rational(l).value());
    const Json j = Json::parse(R"({"rank": 1, "weights": {"a": [3, 2], "A": 0.5}})");
    const WeightScheme r = weights_from_json(j);
    CHECK(r.rational(1).value() == doctest::Approx(1.5));
    CHECK(r.rational(-1).value() == doctest::Approx(0.5));
  }

  TEST_CASE("weights validation") {
    CHECK(code_of([] { weights_from_json(Json::parse(R"({"rank": 1, "weights": {"a": 1}})")); }) ==
          ErrorCode::invalid_argument);
    CHECK(code_of([] { weights_from_json(Json::parse(R"({"rank": 1, "weights": {"a": 1, "A": 1, "b": 1}})")); }) ==
          ErrorCode::invalid_argument);
    CHECK(code_of([] { weights_from_json(Json::parse(R"({"rank": 1, "weights": {"a": 1, "A": -1}})")); }) ==
          ErrorCode::invalid_argument);
    CHECK(code_of([] { weights_from_json(Json::parse(R"({"rank": 1, "weights": {"a": 1, "A": 1}, "x": 0})")); }) ==
          ErrorCode::invalid_argument);
  }

  TEST_CASE("measure round trip") {
    const MeasureSpec mu = MeasureSpec::create(2, {W("a"), W("Ab"), W("B")}, {0.5, 0.25, 0.25});
    const MeasureSpec back = measure_from_json(measure_to_json(mu));
    CHECK(back.size() == 3);
    CHECK(back.element(1) == W("Ab"));
    CHECK(back.probabilities() == mu.probabilities());
    CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"rank": 2, "support": ["a"], "weights": [1]})")), Error);
  }

  TEST_CASE("schottky round trip and validation") {
    SchottkySet S;
    S.rank = 2;
    S.K0 = 6;
    S.M0 = 2;
    S.sequences = {{W("a"), W("b")}, {W("b"), W("b")}};
    S.D0 = 1;
    S.D1 = 2;
    S.E0 = 20;
    S.calibrated = true;
    S.log.seed = 9;
    S.log.d1_measured = 1.75;
    const SchottkySet back = schottky_from_json(schottky_to_json(S));
    CHECK(back.sequences == S.sequences);
    CHECK(back.M0 == 2);
    CHECK(back.E0 == 20);
    CHECK(back.log.seed == 9);
    CHECK(back.log.d1_measured == 1.75);

    Json bad = schottky_to_json(S);
    bad["constants"]["D1"] = 50;
    CHECK_THROWS_AS(schottky_from_json(bad), Error);
    Json ragged = schottky_to_json(S);
    ragged["sequences"][0].push_back("a");
    CHECK_THROWS_AS(schottky_from_json(ragged), Error);
  }

  TEST_CASE("automorphisms round trip") {
    const auto list = default_outer_generators().elements;
    const auto back = automorphisms_from_json(3, automorphisms_to_json(list));
    REQUIRE(back.size() == list.size());
    for (std::size_t i = 0; i < list.size(); ++i) CHECK(back[i].images() == list[i].images());
    const Json broken = Json::parse(R"([{"images": ["ab", "b"], "inverse_images": ["a", "b"]}])");
    CHECK_THROWS_AS(automorphisms_from_json(2, broken), Error);
  }

  TEST_CASE("config parsing") {
    const ExperimentConfig c = parse_config(minimal_drift());
    CHECK(c.kind == ExperimentKind::drift);
    CHECK(c.id == "drift");
    CHECK(c.seed == 4);
    CHECK(c.seed_source == "config");
    REQUIRE(c.measure.has_value());
    CHECK(c.measure->size() == 4);

    const ExperimentConfig e = parse_config(minimal_drift(), 12);
    CHECK(e.seed == 12);
    CHECK(e.seed_source == "ASYMWALK_SEED");
    CHECK(e.echo["seed"] == 12);

    Json no_seed = minimal_drift();
    no_seed.erase("seed");
    CHECK_THROWS_AS(parse_config(no_seed), Error);
    Json negative = minimal_drift();
    negative["seed"] = -1;
    CHECK_THROWS_AS(parse_config(negative), Error);
    Json extra = minimal_drift();
    extra["verbose"] = true;
    CHECK_THROWS_AS(parse_config(extra), Error);
    Json wrong_param = minimal_drift();
    wrong_param["params"] = {{"K", 3}};
    CHECK_THROWS_AS(parse_config(wrong_param), Error);
    Json unknown = minimal_drift();
    unknown["experiment"] = "teleport";
    CHECK_THROWS_AS(parse_config(unknown), Error);
    Json gens = minimal_drift();
    gens["generators"] = "default";
    CHECK_THROWS_AS(parse_config(gens), Error);
    Json path_id = minimal_drift();
    path_id["id"] = "../x";
    CHECK_THROWS_AS(parse_config(path_id), Error);
    Json ranks = minimal_drift();
    ranks["measure"] = {{"rank", 3}, {"support", {"a", "A"}}};
    CHECK(code_of([&] { parse_config(ranks); }) == ErrorCode::rank_mismatch);

    const ExperimentConfig outer = parse_config(Json::parse(
        R"({"experiment": "outer", "seed": 1, "n_list": [2], "trials": 3, "generators": "default"})"));
    CHECK(outer.generators.size() == 8);
    CHECK_FALSE(outer.measure.has_value());
  }

  TEST_CASE("exit codes") {
    CHECK(exit_code_for(ErrorCode::invalid_argument) == 2);
    CHECK(exit_code_for(ErrorCode::rank_mismatch) == 2);
    CHECK(exit_code_for(ErrorCode::budget_exhausted) == 3);
    CHECK(exit_code_for(ErrorCode::overflow) == 3);
  }

  TEST_CASE("results csv") {
    std::ostringstream out;
    write_results_csv(out, "x", {point_row(5, "lambda_hat", 10, 0.25)}, 3);
    CHECK(out.str() == "experiment_id,n,statistic,trials,value,ci_low,ci_high,seed\nx,5,lambda_hat,10,0.25,0.25,0.25,3\n");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  }

  TEST_CASE("run_experiment writes artifacts deterministically") {
    const auto dir = std::filesystem::temp_directory_path() / "asymwalk_runner_test";
    std::filesystem::remove_all(dir);
    ExperimentConfig c = parse_config(minimal_drift());
    c.out_dir = (dir / "one").string();
    std::ostringstream err;
    const RunReport a = run_experiment(c, err);
    c.out_dir = (dir / "two").string();
    run_experiment(c, err);
    REQUIRE(a.artifacts.size() == 2);
    auto slurp = [](const std::filesystem::path& p) {
      std::ifstream f(p);
      return std::string(std::istreambuf_iterator<char>(f), {});
    };
    CHECK(slurp(dir / "one" / "drift.csv") == slurp(dir / "two" / "drift.csv"));
    CHECK(slurp(dir / "one" / "drift.summary.json") == slurp(dir / "two" / "drift.summary.json"));
    const Json summary = Json::parse(slurp(dir / "one" / "drift.summary.json"));
    CHECK(summary["library_version"] == library_version());
    CHECK(summary["rng"] == kRngId);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("verify rejects unknown suites") {
    std::ostringstream out, err;
    CHECK(run_verify("everything", {}, out, err) == 2);
    CHECK(run_verify("metric", {}, out, err) == 0);
    CHECK(out.str().find("\"triangle_inequality\"") != std::string::npos);
  }
}
