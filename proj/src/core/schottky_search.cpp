#include "schottky_search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "parallel.hpp"
#include "rng.hpp"
#include "sampling.hpp"

namespace asymwalk {

double default_K0(const WeightScheme& ws) { return std::max(2.0 * ws.max_weight(), 1.0 / ws.min_weight()); }

namespace {

struct Candidate {
  bool viable = false;
  std::size_t length = 0;
  StepTuple tuple;
};

Candidate draw_candidate(const MeasureSpec& mu, std::size_t c, LengthRange lengths, std::uint64_t seed,
                         double K0, const WeightScheme& ws, const std::vector<Word>& quick_points,
                         const GeodesicSampler& sampler) {
  Candidate cand;
  cand.length = lengths.lo + c % (lengths.hi - lengths.lo + 1);
  DrawSequence rng(seed, c, Stream::candidates);
  for (std::size_t i = 0; i < cand.length; ++i) cand.tuple.push_back(mu.element(mu.draw(rng.uniform())));
  // Cheap filters first: exact geodesic product, then the singleton check.
  std::size_t letters = 0;
  WordBuilder b(mu.rank());
  for (const auto& w : cand.tuple) {
    letters += w.size();
    b.append(w);
  }
  if (std::move(b).build().size() != letters) return cand;
  cand.viable = check_schottky({cand.tuple}, K0, ws, quick_points, sampler).ok;
  return cand;
}

}  // namespace

SchottkySet find_schottky(const MeasureSpec& mu, std::size_t cardinality, LengthRange lengths,
                          const WeightScheme& ws, const FindOptions& options) {
  if (mu.rank() != ws.rank()) fail(ErrorCode::rank_mismatch, "measure and weights differ in rank");
  if (cardinality == 0) fail(ErrorCode::invalid_argument, "cardinality must be positive");
  if (lengths.lo == 0 || lengths.lo > lengths.hi) fail(ErrorCode::invalid_argument, "invalid length range");
  if (is_degenerate(mu)) {
    fail(ErrorCode::degenerate_measure, "measure is degenerate: its support lies in a single cyclic subgroup");
  }
  const double K0 = options.K0 > 0 ? options.K0 : default_K0(ws);
  const std::vector<Word> quick_points = ball_words(ws.rank(), 3);
  const GeodesicSampler quick_sampler{2, 6, 100, options.seed};

  std::map<std::size_t, std::vector<StepTuple>> greedy;
  std::set<std::vector<std::string>> seen;
  const std::size_t batch = 256;
  std::size_t examined = 0;
  for (std::size_t begin = 0; begin < options.budget; begin += batch) {
    const std::size_t count = std::min(batch, options.budget - begin);
    // Candidate prechecks run in parallel; merging is in candidate order.
    const auto cands = parallel_map<Candidate>(count, [&](std::size_t k) {
      return draw_candidate(mu, begin + k, lengths, options.seed, K0, ws, quick_points, quick_sampler);
    });
    for (std::size_t k = 0; k < count; ++k) {
      ++examined;
      const Candidate& cand = cands[k];
      if (!cand.viable) continue;
      std::vector<std::string> key;
      for (const auto& w : cand.tuple) key.push_back(w.str());
      if (seen.count(key) != 0) continue;
      auto& set = greedy[cand.length];
      std::vector<StepTuple> trial = set;
      trial.push_back(cand.tuple);
      if (!check_schottky(trial, K0, ws, quick_points, quick_sampler).ok) continue;
      if (!check_schottky(trial, K0, ws, options.check).ok) continue;
      seen.insert(key);
      set = std::move(trial);
      if (set.size() < cardinality) continue;

      SchottkySet S;
      S.rank = ws.rank();
      S.K0 = K0;
      S.M0 = cand.length;
      S.sequences = set;
      S.log.candidates_examined = examined;
      S.log.test_points = ball_words(ws.rank(), options.check.ball_radius).size() + options.check.far_points;
      S.log.test_ball_radius = options.check.ball_radius;
      if (options.calibrate) calibrate_constants(S, ws, options.calibration);
      if (options.require_fairly_long && !S.fairly_long(ws)) {
        // Keep searching at this length with a fresh greedy set.
        set.clear();
        continue;
      }
      return S;
    }
  }
  fail(ErrorCode::budget_exhausted, "no verified Schottky set of cardinality " + std::to_string(cardinality) +
                                        " within " + std::to_string(options.budget) + " candidates");
}

}  // namespace asymwalk
