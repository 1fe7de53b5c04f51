#include <doctest.h>

#include "sampling.hpp"
#include "schottky_search.hpp"
#include "support.hpp"

using namespace asymwalk;
using namespace asymwalk::testing;

namespace {

Segment seg(const char* start, const char* steps) { return Segment(W(start), W(steps)); }

std::vector<Segment> reversed_chain(const std::vector<Segment>& c) {
  std::vector<Segment> r;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r.push_back(it->reversed());
  return r;
}

const SchottkySet& srw_set() {
  static const SchottkySet S = [] {
    return find_schottky(MeasureSpec::uniform_letters(2, true), 4, {3, 8}, WeightScheme::uniform(2));
  }();
  return S;
}

}  // namespace

TEST_SUITE("coarse_geometry") {
  TEST_CASE("grid helpers") {
    const WeightScheme ws = asym_weights();
    CHECK(grid_step(ws) == 0.25);
    CHECK(grid_above(1.0, 0.25) == 1.25);
    CHECK(grid_above(1.1, 0.25) == 1.25);
    CHECK(grid_at_least(1.0, 0.25) == 1.0);
  }

  TEST_CASE("check_aligned on tree examples") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const Segment k = seg("", "aaaa");
    const AlignmentReport r = check_aligned({k, seg("aaaa", "bbbb")}, 0.25, unit);
    CHECK(r.aligned);
    CHECK(r.max_diam == 0);
    const AlignmentReport bad = check_aligned({k, seg("", "bbbb")}, 1, unit);
    CHECK_FALSE(bad.aligned);
    REQUIRE(bad.pairs.size() == 1);
    CHECK(bad.pairs[0].left == 4);
    CHECK_THROWS_AS(check_aligned({k}, 1, unit), Error);
    CHECK_THROWS_AS(check_aligned({k, Segment::point(W("a", 3))}, 1, unit), Error);
  }

  TEST_CASE("alignment is invariant under reversal and left translation") {
    const WeightScheme ws = asym_weights();
    for (int t = 0; t < 400; ++t) {
      std::vector<Segment> chain;
      const std::size_t n = 2 + rng()() % 3;
      for (std::size_t i = 0; i < n; ++i) chain.emplace_back(random_word(2, 6), random_word(2, 4));
      const double C = 0.25 * static_cast<double>(1 + rng()() % 16);
      const AlignmentReport r = check_aligned(chain, C, ws);
      CHECK(check_aligned(reversed_chain(chain), C, ws).aligned == r.aligned);
      const Word g = random_word(2, 6);
      std::vector<Segment> moved;
      for (const auto& s : chain) moved.push_back(s.translated(g));
      const AlignmentReport m = check_aligned(moved, C, ws);
      CHECK(m.aligned == r.aligned);
      CHECK(m.max_diam == r.max_diam);
    }
  }

  TEST_CASE("concatenation of aligned chains sharing a path stays aligned") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const std::vector<Segment> left{Segment::point(Word(2)), seg("", "aa"), seg("aab", "bb")};
    const std::vector<Segment> right{seg("aab", "bb"), seg("aabbba", "ab"), Segment::point(W("aabbbaabaa"))};
    REQUIRE(check_aligned(left, 0.25, unit).aligned);
    REQUIRE(check_aligned(right, 0.25, unit).aligned);
    std::vector<Segment> joined = left;
    joined.insert(joined.end(), right.begin() + 1, right.end());
    CHECK(check_aligned(joined, 0.25, unit).aligned);
  }

  TEST_CASE("bgip constant of the axis of a") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const DiscreteAxis a = axis_of(W("a"), Word(2), {-6, 6}, unit);
    const BgipReport r = bgip_constant(a, GeodesicSampler{}, unit);
    CHECK(r.K <= 2);
    CHECK(r.status == MeasureStatus::ok);
    CHECK(r.exhaustive_geodesics > 0);
    CHECK(r.sampled_geodesics > 0);
  }

  TEST_CASE("bgip constant with asymmetric weights and under reversal") {
    const WeightScheme ws = asym_weights();
    const DiscreteAxis ab = axis_of(W("ab"), Word(2), {-4, 4}, ws);
    const GeodesicSampler sampler{4, 10, 2000, 3};
    const BgipReport r = bgip_constant(ab, sampler, ws);
    CHECK(r.K <= 2 * ws.max_weight());
    const BgipReport rev = bgip_constant(ab.segment.reversed(), sampler, ws);
    CHECK(std::abs(rev.K - r.K) <= grid_step(ws));
  }

  TEST_CASE("bgip rejects a single orbit point") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const DiscreteAxis a = axis_of(W("a"), Word(2), {0, 0}, unit);
    CHECK_THROWS_AS(bgip_constant(a, GeodesicSampler{2, 4, 10, 1}, unit), Error);
  }

  TEST_CASE("geodesics with large projections come close to the axis") {
    const WeightScheme ws = asym_weights();
    const DiscreteAxis axis = axis_of(W("aab"), Word(2), {-4, 4}, ws);
    const Segment& A = axis.segment;
    const double K = bgip_constant(axis, GeodesicSampler{3, 8, 500, 2}, ws).K;
    for (int t = 0; t < 500; ++t) {
      const Segment eta = Segment::between(random_word(2, 8), random_word(2, 8));
      const std::size_t i = A.project_index(eta.start()), j = A.project_index(eta.end());
      if (ws.to_real(A.diam_units(std::min(i, j), std::max(i, j), ws)) <= K) continue;
      std::int64_t closest = INT64_MAX;
      for (const auto& v : eta.vertices()) closest = std::min(closest, dsym_to_segment_units(v, A, ws));
      CHECK(ws.to_real(closest) <= K);
    }
  }

  TEST_CASE("check_schottky examples") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SchottkyCheckOptions quick{6, 300, 12, 48, 1, {3, 8, 300, 1}};
    const SchottkyVerdict ok = check_schottky({{W("a"), W("a"), W("a"), W("a")}, {W("b"), W("b"), W("b"), W("b")}},
                                              default_K0(unit), unit, quick);
    CHECK(ok.ok);
    CHECK(ok.worst_failures <= 1);
    CHECK(ok.tested_points > 1000);

    const SchottkyVerdict dup = check_schottky({{W("a"), W("a")}, {W("a"), W("a")}}, 2, unit, quick);
    CHECK_FALSE(dup.ok);
    CHECK(dup.certificate.find("cardinality") != std::string::npos);

    const SchottkyVerdict cancel = check_schottky({{W("a"), W("A"), W("b")}}, 2, unit, quick);
    CHECK_FALSE(cancel.ok);
    CHECK_FALSE(cancel.condition1);
  }

  TEST_CASE("condition (2) counts failing sequences per point") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const Word pa = W("aaaa"), pb = W("bbbb");
    for (const Word& x : ball_words(2, 4)) {
      const int fails = (condition2_fails(pa, x, 2, unit) ? 1 : 0) + (condition2_fails(pb, x, 2, unit) ? 1 : 0);
      CHECK(fails <= 1);
    }
    CHECK(condition2_fails(pa, W("aa"), 2, unit));
    CHECK_FALSE(condition2_fails(pb, W("aa"), 2, unit));
  }

  TEST_CASE("find_schottky on simple random walk") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const MeasureSpec mu = MeasureSpec::uniform_letters(2, true);
    FindOptions opt;
    opt.budget = 10'000;
    const SchottkySet S = find_schottky(mu, 2, {4, 4}, unit, opt);
    CHECK(S.sequences.size() == 2);
    CHECK(S.M0 == 4);
    CHECK(S.calibrated);
    CHECK(S.D0 <= S.D1);
    CHECK(S.D1 <= S.E0);
    CHECK(check_schottky(S.sequences, S.K0, unit).ok);
    CHECK(S.log.candidates_examined <= 10'000);
  }

  TEST_CASE("find_schottky refuses degenerate measures and reports exhausted budgets") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const MeasureSpec only_a = MeasureSpec::create(2, {W("a")});
    try {
      (void)find_schottky(only_a, 2, {4, 4}, unit);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::degenerate_measure);
    }
    FindOptions tiny;
    tiny.budget = 5;
    try {
      (void)find_schottky(MeasureSpec::uniform_letters(2, true), 50, {4, 4}, unit, tiny);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::budget_exhausted);
    }
  }

  TEST_CASE("calibration is monotone, stable under doubling, and refuses empty sets") {
    const WeightScheme unit = WeightScheme::uniform(2);
    SchottkySet S = srw_set();
    CalibrationOptions base;
    const Constants c1 = calibrate_constants(S, unit, base);
    CHECK(c1.D0 <= c1.D1);
    CHECK(c1.D1 <= c1.E0);
    CHECK(c1.D0 == 2.25);
    CalibrationOptions twice = base;
    twice.samples *= 2;
    twice.seed += 1;
    const Constants c2 = calibrate_constants(S, unit, twice);
    CHECK(std::abs(c2.D0 - c1.D0) <= 0.05 * c1.D0);
    CHECK(std::abs(c2.D1 - c1.D1) <= 0.05 * c1.D1);
    CHECK(std::abs(c2.E0 - c1.E0) <= 0.05 * c1.E0);
    SchottkySet empty;
    empty.rank = 2;
    CHECK_THROWS_AS(calibrate_constants(empty, unit), Error);
  }

  TEST_CASE("dichotomy: one of (p, eta), (kappa, p) is E0-aligned") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SchottkySet& S = srw_set();
    std::mt19937_64 g(77);
    std::size_t tested = 0;
    for (int t = 0; t < 400'000 && tested < 10'000; ++t) {
      const std::size_t a = g() % S.sequences.size(), b = g() % S.sequences.size();
      const Segment k = S.chain(a).translated(random_word(2, 5, g));
      const Segment e = S.chain(b).translated(random_word(2, 10, g));
      if (!pair_aligned(k, e, S.D0, unit)) continue;
      ++tested;
      const Segment p = Segment::point(random_word(2, 12, g));
      CHECK((pair_aligned(p, e, S.E0, unit) || pair_aligned(k, p, S.E0, unit)));
    }
    CHECK(tested == 10'000);
  }

  TEST_CASE("semi-alignment verdicts") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SchottkySet& S = srw_set();
    const Word p = S.product(0);
    const Word o(2);
    const std::vector<Segment> axes{Segment(o, p), Segment(p, p), Segment(power(p, 2), p)};
    const Word y = power(p, 3);
    CHECK(check_semi_aligned(o, axes, y, S.D0, S, unit).verdict == SemiVerdict::aligned);
    CHECK(check_semi_aligned(W("ab"), {}, W("BA"), S.D0, S, unit).verdict == SemiVerdict::aligned);
    const std::vector<Segment> dropped{axes[0], axes[2]};
    CHECK(check_semi_aligned(o, dropped, y, S.D0, S, unit).verdict != SemiVerdict::unknown);
    CHECK_THROWS_AS(check_semi_aligned(o, {Segment(o, W("abababababab"))}, y, S.D0, S, unit), Error);
    CHECK(std::string(semi_verdict_name(SemiVerdict::semi_aligned)) == "SEMI_ALIGNED");
  }

  TEST_CASE("witness subsegments") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const Word o(2);
    const WitnessReport one = witness_subsegments(o, {seg("", "aab")}, W("aab"), 1, 0.25, unit);
    CHECK(one.ok);
    REQUIRE(one.segments.size() == 1);
    CHECK(one.segments[0].begin == 0);
    CHECK(one.segments[0].end == 3);
    CHECK(one.max_hausdorff == 0);

    const WitnessReport two =
        witness_subsegments(o, {seg("aa", "bb"), seg("aabbab", "aa")}, W("aabbabaab"), 1, 0.25, unit);
    CHECK(two.ok);
    CHECK(two.ordered);
    REQUIRE(two.segments.size() == 2);
    CHECK(two.segments[0].end <= two.segments[1].begin);

    try {
      (void)witness_subsegments(o, {seg("", "aaaa")}, W("bbbb"), 1, 1, unit);
      FAIL("expected precondition error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::precondition);
    }
  }
}
