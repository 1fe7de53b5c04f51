#include <doctest.h>

#include <sstream>

#include "limit_stats.hpp"
#include "parallel.hpp"
#include "schottky_search.hpp"
#include "support.hpp"
#include "walk.hpp"

using namespace asymwalk;
using namespace asymwalk::testing;

namespace {

MeasureSpec srw() { return MeasureSpec::uniform_letters(2, true); }
MeasureSpec positive_ab() { return MeasureSpec::create(2, {W("a"), W("b")}); }
MeasureSpec point_a() { return MeasureSpec::create(2, {W("a")}); }

// Constant-letter tuples with a hand-set D0, for walks whose alignment is automatic.
SchottkySet powers_set(std::size_t M0) {
  SchottkySet S;
  S.rank = 2;
  S.K0 = 2;
  S.M0 = M0;
  S.sequences = {StepTuple(M0, W("a")), StepTuple(M0, W("b"))};
  S.D0 = 2.25;
  S.D1 = 4.25;
  S.E0 = 40.25;
  S.calibrated = true;
  return S;
}

}  // namespace

TEST_SUITE("walk") {
  TEST_CASE("measure validation and predicates") {
    CHECK_THROWS_AS(MeasureSpec::create(2, {W("a"), W("b")}, {0.5, 0.6}), Error);
    CHECK_THROWS_AS(MeasureSpec::create(2, {}), Error);
    CHECK(srw().nearest_neighbor());
    CHECK_FALSE(MeasureSpec::create(2, {W("ab")}).nearest_neighbor());
    CHECK(non_elementary(srw()).holds);
    CHECK_FALSE(non_elementary(point_a()).holds);
    CHECK(is_degenerate(point_a()));
    CHECK(is_degenerate(MeasureSpec::create(2, {W("a"), W("A")})));
    CHECK_FALSE(is_degenerate(positive_ab()));
    CHECK(non_arithmetic(srw(), WeightScheme::uniform(2)).holds);
    CHECK(asymptotically_asymmetric(srw(), asym_weights()).holds);
    CHECK_FALSE(asymptotically_asymmetric(srw(), WeightScheme::uniform(2)).holds);
    const MeasureSpec r = MeasureSpec::create(2, {W("ab"), W("b")}, {0.25, 0.75}).reflected();
    CHECK(r.element(0) == W("BA"));
    CHECK(r.probabilities()[1] == 0.75);
  }

  TEST_CASE("inverse-CDF draw") {
    const MeasureSpec mu = MeasureSpec::create(2, {W("a"), W("b"), W("B")}, {0.5, 0.25, 0.25});
    CHECK(mu.draw(0.0) == 0);
    CHECK(mu.draw(0.49) == 0);
    CHECK(mu.draw(0.5) == 1);
    CHECK(mu.draw(0.9999) == 2);
  }

  TEST_CASE("sample_path examples") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SamplePath empty = sample_path(srw(), 0, 1, 0, false, unit);
    REQUIRE(empty.forward.size() == 1);
    CHECK(empty.forward[0].empty());
    const SamplePath a5 = sample_path(point_a(), 5, 1, 0, false, unit);
    CHECK(a5.forward.back() == W("aaaaa"));
    CHECK(a5.displacement.back() == 5);
  }

  TEST_CASE("sample paths are deterministic and extend consistently") {
    const WeightScheme ws = asym_weights();
    const SamplePath p = sample_path(srw(), 300, 42, 7, true, ws);
    const SamplePath q = sample_path(srw(), 300, 42, 7, true, ws);
    CHECK(p.steps == q.steps);
    CHECK(p.forward == q.forward);
    CHECK(p.backward == q.backward);
    const SamplePath longer = sample_path(srw(), 500, 42, 7, true, ws, 100);
    CHECK(std::equal(p.steps.begin(), p.steps.end(), longer.steps.begin()));
    CHECK(std::equal(longer.back_steps.begin(), longer.back_steps.end(), p.back_steps.begin()));
    const SamplePath other = sample_path(srw(), 300, 42, 8, true, ws);
    CHECK(other.steps != p.steps);
  }

  TEST_CASE("prefix products and cached displacements match recomputation") {
    const WeightScheme ws = asym_weights();
    for (std::uint64_t t = 0; t < 20; ++t) {
      const MeasureSpec mu = MeasureSpec::create(2, {W("a"), W("B"), W("ab"), W("bA")}, {0.4, 0.3, 0.2, 0.1});
      const SamplePath p = sample_path(mu, 200, 3, t, true, ws);
      Word z(2), zc(2);
      for (std::size_t i = 0; i < p.length(); ++i) {
        z = concat(z, mu.element(p.steps[i]));
        CHECK(p.forward[i + 1] == z);
        CHECK(p.displacement[i + 1] == dist_units(Word(2), z, ws));
        CHECK(p.return_displacement[i + 1] == dist_units(z, Word(2), ws));
      }
      for (std::size_t i = 0; i < p.backward_length(); ++i) {
        zc = concat(zc, invert(mu.element(p.back_steps[i])));
        CHECK(p.backward[i + 1] == zc);
      }
    }
  }

  TEST_CASE("window") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SamplePath a = sample_path(point_a(), 6, 1, 0, false, unit);
    CHECK(window(a, 3, 2) == std::vector<Word>{W("a"), W("aa"), W("aaa")});
    const SamplePath p = sample_path(srw(), 50, 9, 1, false, unit);
    CHECK(window(p, 4, 4).front().empty());
    const auto y = window(p, 20, 5);
    REQUIRE(y.size() == 6);
    for (std::size_t k = 1; k < y.size(); ++k) {
      CHECK(y[k] == concat(y[k - 1], srw().element(p.steps[20 - 5 + k - 1])));
    }
    CHECK_THROWS_AS(window(p, 3, 4), Error);
    CHECK_THROWS_AS(window(p, 51, 4), Error);
  }

  TEST_CASE("extract_witnesses on a repeated Schottky sequence accepts every block") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SchottkySet S = powers_set(3);
    const SamplePath p = sample_path(point_a(), 30, 1, 0, false, unit);
    const WitnessScan scan = extract_witnesses(p, point_a(), S, unit);
    CHECK(scan.indices == std::vector<std::size_t>{3, 6, 9, 12, 15, 18, 21, 24, 27, 30});
    CHECK(scan.final_chain.aligned);
    const SamplePath shorter = sample_path(point_a(), 2, 1, 0, false, unit);
    CHECK(extract_witnesses(shorter, point_a(), S, unit).indices.empty());
  }

  TEST_CASE("witness chains re-verify at D0") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SchottkySet S = find_schottky(srw(), 4, {3, 8}, unit);
    for (std::uint64_t t = 0; t < 30; ++t) {
      const SamplePath p = sample_path(srw(), 600, 5, t, false, unit);
      const WitnessScan scan = extract_witnesses(p, srw(), S, unit);
      std::vector<Segment> chain{Segment::point(Word(2))};
      for (std::size_t j : scan.indices) {
        CHECK(j % S.M0 == 0);
        chain.push_back(window_axis(p, srw(), j, S.M0));
      }
      chain.push_back(Segment::point(p.forward.back()));
      CHECK(check_aligned(chain, S.D0, unit).aligned);
      CHECK(std::is_sorted(scan.indices.begin(), scan.indices.end()));
    }
  }

  TEST_CASE("deviation index without backtracking is the first Schottky window") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SchottkySet S = powers_set(3);
    const SamplePath a = sample_path(point_a(), 40, 1, 0, true, unit);
    const DeviationReport ra = deviation_index(a, point_a(), S, unit, 40);
    CHECK(ra.status == DeviationStatus::found);
    CHECK(ra.nu == 3);
    for (std::uint64_t t = 0; t < 50; ++t) {
      const SamplePath p = sample_path(positive_ab(), 80, 2, t, true, unit);
      std::size_t first = 0;
      for (std::size_t i = 3; i <= 80 && first == 0; ++i) {
        if (p.steps[i - 1] == p.steps[i - 2] && p.steps[i - 2] == p.steps[i - 3]) first = i;
      }
      const DeviationReport r = deviation_index(p, positive_ab(), S, unit, 80);
      if (first == 0) {
        CHECK(r.status == DeviationStatus::horizon_exhausted);
      } else {
        CHECK(r.status == DeviationStatus::found);
        CHECK(r.nu == first);
        CHECK(r.window <= r.nu);
        CHECK(r.window >= S.M0);
      }
    }
  }

  TEST_CASE("deviation index edge cases") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SchottkySet S = powers_set(3);
    const SamplePath p = sample_path(srw(), 20, 1, 0, true, unit);
    CHECK(deviation_index(p, srw(), S, unit, 0).status == DeviationStatus::horizon_exhausted);
    CHECK_THROWS_AS(deviation_index(p, srw(), S, unit, 21), Error);
    SchottkySet raw = S;
    raw.calibrated = false;
    CHECK_THROWS_AS(deviation_index(p, srw(), raw, unit, 10), Error);
  }

  TEST_CASE("found deviation indices bound the Gromov product") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SchottkySet S = find_schottky(srw(), 4, {5, 8}, unit);
    std::size_t found = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
      const SamplePath p = sample_path(srw(), 100, 13, t, true, unit);
      const DeviationReport r = deviation_index(p, srw(), S, unit, 100);
      if (r.status != DeviationStatus::found) continue;
      ++found;
      CHECK(gromov_bound_holds(p, r, unit));
    }
    CHECK(found > 10);
  }

  TEST_CASE("gromov_deviation") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SamplePath p = sample_path(positive_ab(), 30, 1, 0, true, unit);
    CHECK(gromov_deviation(p, 30, 30, unit).value == 0);
    const SamplePath q = sample_path(srw(), 30, 1, 0, true, unit);
    CHECK(gromov_deviation(q, 0, 0, unit).value == 0);
    // Exact maximum over the grid, against a direct double loop.
    for (std::uint64_t t = 0; t < 10; ++t) {
      const SamplePath s = sample_path(srw(), 40, 4, t, true, asym_weights());
      double best = 0;
      for (std::size_t m = 0; m <= 40; ++m) {
        for (std::size_t n = 0; n <= 40; ++n) {
          best = std::max(best, gromov_product(s.backward[m], s.forward[n], Word(2), asym_weights()));
        }
      }
      CHECK(gromov_deviation(s, 40, 40, asym_weights()).value == best);
    }
  }

  TEST_CASE("streaming walk agrees with sample_path") {
    const WeightScheme ws = asym_weights();
    const SamplePath p = sample_path(srw(), 400, 77, 3, false, ws);
    StreamingWalk w(srw(), ws, 77, 3);
    for (std::size_t n = 1; n <= 400; ++n) {
      w.step();
      const Word& z = p.forward[n];
      REQUIRE(std::equal(w.letters().begin(), w.letters().end(), z.letters().begin(), z.letters().end()));
      CHECK(w.displacement_units() == p.displacement[n]);
      CHECK(w.return_units() == p.return_displacement[n]);
      CHECK(w.translation_units() == translation_length_units(z, ws));
      CHECK(w.inverse_translation_units() == translation_length_units(invert(z), ws));
      CHECK(w.hyperbolic() == !cyclic_reduce(z).core.empty());
    }
    StreamingWalk v(srw(), ws, 77, 3);
    v.advance_to(250);
    CHECK(v.time() == 250);
    CHECK(v.displacement_units() == p.displacement[250]);
  }

  TEST_CASE("estimators do not depend on the thread count") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const unsigned saved = thread_count();
    set_thread_count(1);
    const DriftSummary one = estimate_drift(srw(), 200, 300, unit, 5);
    set_thread_count(4);
    const DriftSummary four = estimate_drift(srw(), 200, 300, unit, 5);
    set_thread_count(saved);
    CHECK(one.lambda_hat == four.lambda_hat);
    CHECK(one.ci_low == four.ci_low);
  }

  TEST_CASE("path CSV") {
    const WeightScheme unit = WeightScheme::uniform(2);
    const SamplePath p = sample_path(positive_ab(), 3, 1, 0, true, unit);
    std::ostringstream out;
    write_path_csv(out, p, positive_ab(), unit);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "step_index,letter,displacement_forward,displacement_backward");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows >= 3);
  }
}
