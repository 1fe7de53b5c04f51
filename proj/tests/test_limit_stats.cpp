#include <doctest.h>

#include <cmath>
#include <map>

#include "dp_oracle.hpp"
#include "limit_stats.hpp"
#include "support.hpp"
#include "walk.hpp"

using namespace asymwalk;
using namespace asymwalk::testing;

namespace {

MeasureSpec srw() { return MeasureSpec::uniform_letters(2, true); }
MeasureSpec positive_ab() { return MeasureSpec::create(2, {W("a"), W("b")}); }
MeasureSpec point_a() { return MeasureSpec::create(2, {W("a")}); }
MeasureSpec lopsided() {
  return MeasureSpec::create(2, {W("a"), W("A"), W("b"), W("B")}, {0.4, 0.1, 0.3, 0.2});
}

void check_same_law(const DisplacementLaw& a, const DisplacementLaw& b) {
  // Compare as maps over real displacement, so differing denominators are fine.
  std::map<double, double> ma, mb;
  for (std::size_t i = 0; i < a.units.size(); ++i) ma[static_cast<double>(a.units[i]) / a.denominator] += a.probs[i];
  for (std::size_t i = 0; i < b.units.size(); ++i) mb[static_cast<double>(b.units[i]) / b.denominator] += b.probs[i];
  for (auto& [x, p] : ma) {
    if (p < 1e-15) continue;
    CHECK(mb[x] == doctest::Approx(p).epsilon(1e-10));
  }
  for (auto& [x, p] : mb) {
    if (p < 1e-15) continue;
    CHECK(ma[x] == doctest::Approx(p).epsilon(1e-10));
  }
}

double total(const DisplacementLaw& law) {
  double s = 0;
  for (double p : law.probs) s += p;
  return s;
}

}  // namespace

TEST_SUITE("limit_stats") {
  TEST_CASE("stats helpers") {
    const std::vector<double> xs{1, 2, 3, 4};
    const Moments m = moments(xs);
    CHECK(m.mean == 2.5);
    CHECK(m.variance == doctest::Approx(5.0 / 3));
    CHECK(quantile(xs, 0.5) == 2.5);
    CHECK(quantile(xs, 1.0) == 4);
    CHECK(normal_cdf(0) == doctest::Approx(0.5));
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const LinearFit f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(2));
    CHECK(f.intercept == doctest::Approx(1));
    CHECK(f.r2 == doctest::Approx(1));
    CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0);
    CHECK(ks_two_sample({1, 2}, {3, 4}) == 1);
    std::vector<double> grid;
    for (int i = 1; i < 1000; ++i) {
      // Normal quantiles by bisection on normal_cdf.
      const double q = i / 1000.0;
      double lo = -10, hi = 10;
      for (int k = 0; k < 80; ++k) (normal_cdf((lo + hi) / 2) < q ? lo : hi) = (lo + hi) / 2;
      grid.push_back(lo);
    }
    CHECK(ks_normal(grid, 0, 1) < 0.002);
    const StatRow r = proportion_row(10, "p", 0, 100);
    CHECK(r.value == 0);
    CHECK(r.ci_low == 0);
    CHECK(r.ci_high > 0.01);
    CompensatedSum cs;
    cs.add(1e16);
    for (int i = 0; i < 10; ++i) cs.add(1.0);
    cs.add(-1e16);
    CHECK(cs.value() == 10);
  }

  TEST_CASE("exact displacement law at n = 1 and n = 2") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const DisplacementLaw one = displacement_law(srw(), 1, unit);
    REQUIRE(one.units.size() == 1);
    CHECK(one.units[0] == 1);
    CHECK(one.probs[0] == doctest::Approx(1));
    const DisplacementLaw two = displacement_law(srw(), 2, unit);
    REQUIRE(two.units.size() == 2);
    CHECK(two.units[0] == 0);
    CHECK(two.probs[0] == doctest::Approx(0.25));
    CHECK(two.units[1] == 2);
    CHECK(two.probs[1] == doctest::Approx(0.75));
  }

  TEST_CASE("exact law matches brute-force enumeration") {
    const WeightScheme ws = asym_weights();
    for (std::size_t n = 0; n <= 6; ++n) {
      check_same_law(displacement_law(srw(), n, ws), enumerate_displacement(srw(), n, ws));
      check_same_law(displacement_law(srw(), n, WeightScheme::uniform(2)),
                     enumerate_displacement(srw(), n, WeightScheme::uniform(2)));
      check_same_law(displacement_law(lopsided(), n, ws), enumerate_displacement(lopsided(), n, ws));
      const MeasureSpec three = MeasureSpec::create(2, {W("a"), W("b"), W("B")}, {0.5, 0.3, 0.2});
      check_same_law(displacement_law(three, n, ws), enumerate_displacement(three, n, ws));
    }
  }

  TEST_CASE("exact law is normalized and rejects non-nearest-neighbour measures") {
    const DisplacementLaw law = displacement_law(lopsided(), 200, asym_weights());
    CHECK(std::abs(total(law) - 1) < 1e-12);
    CHECK(std::abs(total(displacement_law(srw(), 2000, asym_weights())) - 1) < 1e-12);
    try {
      (void)displacement_law(MeasureSpec::create(2, {W("ab"), W("b")}), 4, asym_weights());
      FAIL("expected unsupported");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::unsupported);
    }
  }

  TEST_CASE("exact drift of simple random walk at n = 10^4") {
    const DisplacementLaw law = displacement_law(srw(), 10'000, WeightScheme::uniform(2));
    CHECK(std::abs(law.mean() / 10'000 - 0.5) < 1e-3);
    CHECK(exact_drift(srw(), 10'000, WeightScheme::uniform(2)) == doctest::Approx(law.mean() / 10'000));
  }

  TEST_CASE("Monte Carlo means sit within 3 standard errors of the exact mean") {
    const WeightScheme ws = asym_weights();
    for (std::size_t n : {10, 50, 200}) {
      for (const MeasureSpec& mu : {srw(), lopsided()}) {
        const DriftSummary d = estimate_drift(mu, n, 2000, ws, 17);
        const double exact = displacement_law(mu, n, ws).mean() / static_cast<double>(n);
        CHECK(std::abs(d.lambda_hat - exact) <= 3 * d.std_error);
      }
    }
  }

  TEST_CASE("drift examples") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const DriftSummary d = estimate_drift(positive_ab(), 100, 200, unit, 1);
    CHECK(d.lambda_hat == 1);
    CHECK(d.ci_low == 1);
    try {
      (void)estimate_drift(point_a(), 100, 200, unit, 1);
      FAIL("expected degenerate_measure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::degenerate_measure);
    }
    const DriftSummary s = estimate_drift(srw(), 2000, 400, unit, 3);
    CHECK(s.positive);
    CHECK(s.lambda_hat - 3 * s.std_error > 0);
    CHECK_FALSE(s.rows().empty());
  }

  TEST_CASE("clt diagnostics") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const CltSummary point = clt_diagnostics(point_a(), 100, 200, unit, 1);
    CHECK(point.degenerate);
    CHECK(point.sigma2 == 0);
    CHECK_THROWS_AS(clt_diagnostics(srw(), 100, 99, unit, 1), Error);
    const CltSummary c = clt_diagnostics(srw(), 1000, 2000, unit, 2);
    const double exact = displacement_law(srw(), 1000, unit).variance() / 1000;
    CHECK(std::abs(c.sigma2 - exact) < 0.15 * exact);
    CHECK(std::abs(c.sigma2_tau - c.sigma2) < 0.15 * c.sigma2);
    CHECK(c.ks < 0.06);
    CHECK(c.ks_between < 0.06);
  }

  TEST_CASE("lil scan") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const LilSummary point = lil_scan(point_a(), 1000, 3, unit, 1);
    CHECK(point.envelope_max == 0);
    CHECK(point.max_gap == 0);
    CHECK_THROWS_AS(lil_scan(srw(), 99, 3, unit, 1), Error);
    const LilSummary s = lil_scan(srw(), 20'000, 20, unit, 1);
    CHECK(s.envelope_max > 0);
    CHECK(s.envelope_max < 3 * s.sigma_hat);
    CHECK(s.checkpoints.size() == s.envelope.size());
  }

  TEST_CASE("ldp tail from the exact law") {
    const WeightScheme unit = WeightScheme::uniform(2);
    std::vector<std::size_t> ns;
    for (std::size_t n = 100; n <= 1000; n += 100) ns.push_back(n);
    const LdpSummary l = ldp_tail(srw(), 0.4, ns, 0, unit, 1);
    CHECK(l.exact);
    CHECK(l.fit.slope < 0);
    CHECK(l.fit.r2 > 0.9);
    const LdpSummary low = ldp_tail(srw(), 0.1, ns, 0, unit, 1);
    CHECK(low.fit.slope < l.fit.slope);
    CHECK(std::abs(l.profile.zero_location - 0.5) <= kRateGridStep);
    CHECK(l.profile.minimum < 1e-3);
    for (double r : l.profile.rate) CHECK(r >= 0);
    try {
      (void)ldp_tail(srw(), 0.6, ns, 0, unit, 1);
      FAIL("expected precondition error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::precondition);
    }
  }

  TEST_CASE("discrepancy scan") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const DiscrepancySummary point = discrepancy_scan(point_a(), {10, 100}, 50, 1, unit, 1);
    for (const auto& q : point.per_n) CHECK(q.max == 0);
    const DiscrepancySummary ab = discrepancy_scan(positive_ab(), {10, 100}, 200, 1, asym_weights(), 1);
    for (const auto& q : ab.per_n) CHECK(q.max == 0);
    const DiscrepancySummary s = discrepancy_scan(srw(), {100, 1000}, 500, 1, unit, 1);
    CHECK(s.per_n[1].q99 < s.per_n[0].q99);
  }

  TEST_CASE("genericity scan") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const GenericitySummary ab = genericity_scan(positive_ab(), 0.9, {1, 10, 100}, 100, unit, 1);
    for (double f : ab.fraction) CHECK(f == 1);
    const GenericitySummary s = genericity_scan(srw(), 0.4, {50, 100, 200}, 2000, unit, 2);
    CHECK(s.fraction[2] > s.fraction[0]);
    CHECK(s.slope < 0);
  }

  TEST_CASE("tracking scan") {
    const WeightScheme unit = WeightScheme::uniform(2);
    CHECK(tracking_scan(point_a(), 200, 10, 1, unit, 1).max == 0);
    CHECK(tracking_scan(positive_ab(), 200, 10, 1, asym_weights(), 1).max == 0);
    // Direct computation for one trial: max_k d^sym(Z_k o, [o, Z_n o]).
    const TrackingSummary t = tracking_scan(srw(), 300, 3, 1, asym_weights(), 8);
    for (std::uint64_t trial = 0; trial < 3; ++trial) {
      const SamplePath p = sample_path(srw(), 300, 8, trial, false, asym_weights());
      const Segment g = Segment::between(Word(2), p.forward.back());
      std::int64_t worst = 0;
      for (const auto& z : p.forward) worst = std::max(worst, dsym_to_segment_units(z, g, asym_weights()));
      CHECK(t.scaled[trial] == doctest::Approx(asym_weights().to_real(worst) / std::sqrt(300.0)));
    }
  }

  TEST_CASE("asymmetry test") {
    const WeightScheme unit = WeightScheme::uniform(2);
    try {
      (void)asymmetry_test(srw(), 10, {20, 40}, 100, unit, 1);
      FAIL("expected refusal");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::precondition);
    }
    const WeightScheme ws = asym_weights();
    CHECK(translation_length(W("a"), ws) - translation_length(W("A"), ws) == -1);
    CHECK(translation_length(W("b"), ws) - translation_length(W("B"), ws) == -2);
    const AsymmetrySummary a = asymmetry_test(srw(), 10, {20, 200}, 1000, ws, 1);
    CHECK(a.certificate.holds);
    REQUIRE(a.probability.size() == 2);
    CHECK(a.probability[1].value < a.probability[0].value);
  }

  TEST_CASE("translation length never exceeds displacement") {
    const WeightScheme ws = asym_weights();
    for (int t = 0; t < 500; ++t) {
      const Word g = random_word(2, 20);
      CHECK(translation_length_units(g, ws) <= ws.word_units(g));
    }
  }
}
