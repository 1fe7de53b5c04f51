// Self-check suites behind `asymwalk verify`.
#include <cmath>
#include <functional>
#include <ostream>
#include <algorithm>

#include "dp_oracle.hpp"
#include "limit_stats.hpp"
#include "runner.hpp"
#include "sampling.hpp"
#include "walk.hpp"

namespace asymwalk {

namespace {

WeightScheme shipped_weights() { return WeightScheme::from_values(2, {1, 2, 1, 3}); }

class Reporter {
 public:
  Reporter(std::ostream& out, std::string suite) : out_(out), suite_(std::move(suite)) {}

  void check(const std::string& name, bool pass, Json detail = Json::object()) {
    Json line = {{"suite", suite_}, {"check", name}, {"pass", pass}};
    if (!detail.empty()) line["detail"] = std::move(detail);
    out_ << line.dump() << '\n';
    ++total_;
    if (!pass) ++failed_;
  }

  // Runs `body`; a thrown Error becomes a failed check carrying the message.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      check(name, false, {{"error", error_code_name(e.code())}, {"message", e.what()}});
    }
  }

  std::size_t total() const { return total_; }
  std::size_t failed() const { return failed_; }

 private:
  std::ostream& out_;
  std::string suite_;
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
};

Word random_word(DrawSequence& g, int rank, std::size_t max_len) {
  return random_reduced_word(rank, static_cast<std::size_t>(g.below(max_len + 1)), g);
}

void metric_suite(Reporter& r, const WeightScheme& ws) {
  DrawSequence g(101, 0, Stream::aux);
  std::size_t triangle = 0, identity = 0, positivity = 0, sym = 0, asym_pairs = 0;
  constexpr std::size_t kTriples = 10'000;
  for (std::size_t t = 0; t < kTriples; ++t) {
    const Word x = random_word(g, ws.rank(), 20);
    const Word y = random_word(g, ws.rank(), 20);
    const Word z = random_word(g, ws.rank(), 20);
    const auto xy = dist_units(x, y, ws), yz = dist_units(y, z, ws), xz = dist_units(x, z, ws);
    if (xz > xy + yz) ++triangle;
    if (dist_units(x, x, ws) != 0) ++identity;
    if ((xy == 0) != (x == y)) ++positivity;
    if (dist_sym_units(x, y, ws) != dist_sym_units(y, x, ws)) ++sym;
    if (xy != dist_units(y, x, ws)) ++asym_pairs;
  }
  r.check("triangle_inequality", triangle == 0, {{"triples", kTriples}, {"violations", triangle}});
  r.check("zero_on_diagonal", identity == 0, {{"violations", identity}});
  r.check("positive_off_diagonal", positivity == 0, {{"violations", positivity}});
  r.check("dsym_symmetric", sym == 0, {{"violations", sym}});
  bool symmetric_weights = true;
  for (int k = 1; k <= ws.rank(); ++k) {
    symmetric_weights = symmetric_weights && ws.rational(k).value() == ws.rational(-k).value();
  }
  r.check("asymmetry_matches_weights", (asym_pairs == 0) == symmetric_weights, {{"asymmetric_pairs", asym_pairs}});
  std::size_t reduce_bad = 0;
  for (int t = 0; t < 2000; ++t) {
    const Word u = random_word(g, ws.rank(), 12);
    const Word v = random_word(g, ws.rank(), 12);
    if (concat(concat(u, v), invert(v)) != u) ++reduce_bad;
  }
  r.check("free_reduction", reduce_bad == 0, {{"violations", reduce_bad}});
}

SchottkyCheckOptions quick_check() { return {6, 300, 12, 48, 1, {3, 8, 300, 1}}; }

void geometry_suite(Reporter& r, const WeightScheme& ws, const std::optional<SchottkySet>& fixture) {
  r.guarded("bgip_axis_a", [&] {
    const BgipReport b = bgip_constant(axis_of(Word::parse(ws.rank(), "a"), Word(ws.rank()), {-4, 4}, ws),
                                       GeodesicSampler{4, 8, 500, 1}, ws);
    r.check("bgip_axis_a", b.K <= 2 * ws.max_weight(), {{"K", b.K}});
  });
  if (fixture) {
    r.guarded("schottky_fixture", [&] {
      if (fixture->rank != ws.rank()) fail(ErrorCode::rank_mismatch, "fixture rank differs from the weights");
      const SchottkyVerdict v = check_schottky(fixture->sequences, fixture->K0, ws, quick_check());
      Json detail = {{"condition1", v.condition1}, {"condition2", v.condition2}, {"condition3", v.condition3},
                     {"tested_points", v.tested_points}};
      if (!v.ok) detail["certificate"] = v.certificate;
      r.check("schottky_fixture", v.ok, detail);
      const bool ordered = !fixture->calibrated ||
                           (fixture->D0 > 0 && fixture->D0 <= fixture->D1 && fixture->D1 <= fixture->E0);
      r.check("constants_ordered", ordered, {{"D0", fixture->D0}, {"D1", fixture->D1}, {"E0", fixture->E0}});
    });
    return;
  }
  r.guarded("schottky_search", [&] {
    FindOptions f;
    f.budget = 10'000;
    f.check = quick_check();
    const MeasureSpec mu = MeasureSpec::uniform_letters(ws.rank(), true);
    const SchottkySet S = find_schottky(mu, 2, {4, 4}, ws, f);
    const SchottkyVerdict v = check_schottky(S.sequences, S.K0, ws, quick_check());
    r.check("schottky_search", v.ok, {{"M0", S.M0}, {"K0", S.K0}, {"certificate", v.certificate}});
    r.check("constants_ordered", S.D0 > 0 && S.D0 <= S.D1 && S.D1 <= S.E0,
            {{"D0", S.D0}, {"D1", S.D1}, {"E0", S.E0}});
  });
}

void walks_suite(Reporter& r, const WeightScheme& ws) {
  const MeasureSpec mu = MeasureSpec::uniform_letters(ws.rank(), true);
  r.guarded("path_reconstruction", [&] {
    std::size_t bad = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const SamplePath p = sample_path(mu, 200, 3, t, true, ws);
      Word z(ws.rank());
      for (std::size_t i = 0; i < p.length(); ++i) {
        z = concat(z, mu.support()[p.steps[i]]);
        if (z != p.forward[i + 1] || dist_units(Word(ws.rank()), z, ws) != p.displacement[i + 1]) ++bad;
      }
    }
    r.check("path_reconstruction", bad == 0, {{"mismatches", bad}});
  });
  r.guarded("seed_determinism", [&] {
    const SamplePath a = sample_path(mu, 300, 9, 4, true, ws);
    const SamplePath b = sample_path(mu, 300, 9, 4, true, ws);
    const SamplePath longer = sample_path(mu, 600, 9, 4, true, ws);
    const bool prefix = std::equal(a.steps.begin(), a.steps.end(), longer.steps.begin());
    r.check("seed_determinism", a.steps == b.steps && a.back_steps == b.back_steps && prefix);
  });
  r.guarded("witness_reverification", [&] {
    SchottkySet S;
    S.rank = ws.rank();
    S.K0 = default_K0(ws);
    S.M0 = 3;
    S.sequences = {{Word::parse(ws.rank(), "a"), Word::parse(ws.rank(), "a"), Word::parse(ws.rank(), "a")},
                   {Word::parse(ws.rank(), "b"), Word::parse(ws.rank(), "b"), Word::parse(ws.rank(), "b")}};
    calibrate_constants(S, ws);
    S.calibrated = true;
    std::size_t bad = 0, found = 0;
    for (std::uint64_t t = 0; t < 40; ++t) {
      const SamplePath p = sample_path(mu, 400, 21, t, false, ws);
      const WitnessScan w = extract_witnesses(p, mu, S, ws);
      found += w.indices.size();
      if (!w.final_chain.aligned) ++bad;
    }
    r.check("witness_reverification", bad == 0, {{"witnesses", found}, {"failures", bad}});
  });
}

void stats_suite(Reporter& r, const WeightScheme& ws) {
  const MeasureSpec mu = MeasureSpec::uniform_letters(ws.rank(), true);
  r.guarded("dp_matches_enumeration", [&] {
    double worst = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
      const DisplacementLaw a = displacement_law(mu, n, ws);
      const DisplacementLaw b = enumerate_displacement(mu, n, ws);
      worst = std::max(worst, std::abs(a.mean() - b.mean()));
      worst = std::max(worst, std::abs(a.variance() - b.variance()));
    }
    r.check("dp_matches_enumeration", worst < 1e-9, {{"max_difference", worst}});
  });
  r.guarded("drift_within_three_se", [&] {
    const DriftSummary d = estimate_drift(mu, 500, 400, ws, 17);
    const double exact = exact_drift(mu, 500, ws);
    r.check("drift_within_three_se", std::abs(d.lambda_hat - exact) <= 3 * d.std_error + 1e-12,
            {{"lambda_hat", d.lambda_hat}, {"exact", exact}, {"std_error", d.std_error}});
  });
  r.guarded("translation_below_displacement", [&] {
    std::size_t bad = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
      const SamplePath p = sample_path(mu, 100, 5, t, false, ws);
      if (translation_length(p.forward.back(), ws) > dist(Word(ws.rank()), p.forward.back(), ws) + 1e-12) ++bad;
    }
    r.check("translation_below_displacement", bad == 0, {{"violations", bad}});
  });
}

void outer_suite(Reporter& r) {
  r.guarded("fibonacci_growth", [&] {
    const Automorphism fib = Automorphism::parse(2, {"ab", "a"}, {"b", "Ba"}, "fib");
    const double pf = pf_eigenvalue(transition_matrix(fib)).value;
    const double g = growth_rate(fib).lambda;
    r.check("fibonacci_growth", std::abs(g - (1 + std::sqrt(5.0)) / 2) < 1e-3 && std::abs(g - pf) < 1e-6,
            {{"growth", g}, {"pf", pf}});
  });
  r.guarded("plastic_growth", [&] {
    const Automorphism p = Automorphism::parse(3, {"b", "c", "ab"}, {"cA", "a", "b"}, "plastic");
    const double g = growth_rate(p).lambda;
    r.check("plastic_growth", std::abs(g - 1.324717957244746) < 1e-3, {{"growth", g}});
  });
  r.guarded("generator_inverses", [&] {
    const GeneratingSet gens = default_outer_generators();
    bool ok = true;
    for (std::size_t i = 0; i + 1 < gens.elements.size(); i += 2) {
      ok = ok && compose(gens.elements[i], gens.elements[i + 1]).is_identity();
    }
    r.check("generator_inverses", ok);
  });
}

}  // namespace

int run_verify(const std::string& suite, const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kSuites = {"metric", "geometry", "walks", "stats", "outer"};
  if (suite != "all" && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
    err << "error: unknown suite '" << suite << "' (metric, geometry, walks, stats, outer, all)\n";
    return 2;
  }
  WeightScheme ws = shipped_weights();
  std::optional<SchottkySet> fixture;
  try {
    if (options.weights_path) ws = weights_from_json(read_json_file(*options.weights_path));
    if (options.schottky_path) fixture = schottky_from_json(read_json_file(*options.schottky_path));
  } catch (const Error& e) {
    err << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error (invalid_argument): " << e.what() << '\n';
    return 2;
  }

  std::size_t total = 0, failed = 0;
  for (const auto& name : kSuites) {
    if (suite != "all" && suite != name) continue;
    Reporter r(out, name);
    if (name == "metric") metric_suite(r, ws);
    if (name == "geometry") geometry_suite(r, ws, fixture);
    if (name == "walks") walks_suite(r, ws);
    if (name == "stats") stats_suite(r, ws);
    if (name == "outer") outer_suite(r);
    total += r.total();
    failed += r.failed();
  }
  out << Json{{"suite", suite}, {"checks", total}, {"failed", failed}, {"pass", failed == 0}}.dump() << '\n';
  return failed == 0 ? 0 : 1;
}

}  // namespace asymwalk
