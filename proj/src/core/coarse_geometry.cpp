#include "coarse_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "sampling.hpp"

namespace asymwalk {

double grid_step(const WeightScheme& ws) { return 0.25 * ws.min_weight(); }

double grid_above(double x, double step) { return (std::floor(x / step + 1e-9) + 1.0) * step; }

double grid_at_least(double x, double step) { return std::ceil(x / step - 1e-9) * step; }

namespace {

bool below(std::int64_t units, double C, const WeightScheme& ws) {
  return static_cast<double>(units) < C * static_cast<double>(ws.denominator()) - 1e-9;
}

}  // namespace

// ---------------------------------------------------------------------------

PairDiameters pair_diameters(const Segment& left, const Segment& right, const WeightScheme& ws) {
  check_same_rank(left.start(), right.start());
  PairDiameters p;
  // Projection of a geodesic onto a tree geodesic is the sub-chain between
  // the projections of its endpoints.
  const std::size_t i1 = left.project_index(right.start());
  const std::size_t i2 = left.project_index(right.end());
  p.left_lo = std::min(i1, i2);
  p.left_hi = std::max(i1, i2);
  p.left_units = left.diam_units(p.left_lo, left.length(), ws);
  p.left = ws.to_real(p.left_units);

  const std::size_t j1 = right.project_index(left.start());
  const std::size_t j2 = right.project_index(left.end());
  p.right_lo = std::min(j1, j2);
  p.right_hi = std::max(j1, j2);
  p.right_units = right.diam_units(0, p.right_hi, ws);
  p.right = ws.to_real(p.right_units);
  return p;
}

bool pair_aligned(const Segment& left, const Segment& right, double C, const WeightScheme& ws) {
  const PairDiameters p = pair_diameters(left, right, ws);
  return below(p.left_units, C, ws) && below(p.right_units, C, ws);
}

AlignmentReport check_aligned(const std::vector<Segment>& paths, double C, const WeightScheme& ws) {
  if (paths.size() < 2) fail(ErrorCode::invalid_argument, "alignment needs at least two paths");
  for (const auto& s : paths) check_rank(ws, s.start());
  AlignmentReport r;
  r.threshold = C;
  for (std::size_t i = 0; i + 1 < paths.size(); ++i) {
    PairDiameters p = pair_diameters(paths[i], paths[i + 1], ws);
    r.max_diam = std::max({r.max_diam, p.left, p.right});
    r.aligned = r.aligned && below(p.left_units, C, ws) && below(p.right_units, C, ws);
    r.pairs.push_back(p);
  }
  return r;
}

// ---------------------------------------------------------------------------

double quasigeodesic_constant(const std::vector<Word>& pts, const WeightScheme& ws) {
  const double step = grid_step(ws);
  struct Gap {
    double t;
    double lo;
    double hi;
  };
  std::vector<Gap> gaps;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    for (std::size_t t = s + 1; t < pts.size(); ++t) {
      const double f = dist(pts[s], pts[t], ws);
      const double b = dist(pts[t], pts[s], ws);
      gaps.push_back({static_cast<double>(t - s), std::min(f, b), std::max(f, b)});
    }
  }
  auto holds = [&](double K) {
    for (const auto& g : gaps) {
      if (g.t / K - K > g.lo + 1e-12 || g.hi > K * g.t + K + 1e-12) return false;
    }
    return true;
  };
  double K = std::max(1.0, step);
  K = grid_at_least(K, step);
  while (!holds(K)) K += step;
  return K;
}

namespace {

struct Contribution {
  double value = 0;  // min(d^sym(eta, chain), diam pi(eta))
  double dsym = 0;
  double diam = 0;
};

// Geodesic [u, v] against the chain, using the tree structure: distinct
// endpoint projections mean the geodesic runs through the chain.
Contribution contribution(const Word& u, const Word& v, std::size_t iu, std::size_t iv,
                          const Segment& chain, const WeightScheme& ws) {
  Contribution c;
  if (iu != iv) {
    c.dsym = 0;
    c.diam = ws.to_real(chain.diam_units(std::min(iu, iv), std::max(iu, iv), ws));
  } else {
    const Word p = chain.vertex(iu);
    const std::size_t gu = graph_distance(p, u);
    const std::size_t gv = graph_distance(p, v);
    const std::size_t guv = graph_distance(u, v);
    const std::size_t k = (gu + gv - guv) / 2;  // edges from p to the geodesic
    const Word to_bridge = concat(invert(p), u).prefix(k);
    c.dsym = ws.to_real(ws.word_units(to_bridge) + ws.reverse_units(to_bridge));
    c.diam = 0;
  }
  c.value = std::min(c.dsym, c.diam);
  return c;
}

BgipReport bgip_impl(const Segment& chain, const Word& center, const GeodesicSampler& sampler,
                     const WeightScheme& ws) {
  check_rank(ws, chain.start());
  if (chain.length() == 0) fail(ErrorCode::precondition, "axis too short: a single orbit point");
  const int rank = ws.rank();
  BgipReport r;
  double best = -1;

  const std::vector<Word> local = ball_words(rank, sampler.exhaustive_radius);
  std::vector<Word> ball;
  std::vector<std::size_t> proj;
  ball.reserve(local.size());
  proj.reserve(local.size());
  for (const auto& w : local) {
    ball.push_back(concat(center, w));
    proj.push_back(chain.project_index(ball.back()));
  }
  for (std::size_t a = 0; a < ball.size(); ++a) {
    for (std::size_t b = a + 1; b < ball.size(); ++b) {
      if (proj[a] == proj[b]) {
        // Single-point projection: diam 0, contribution 0 without computing d^sym.
        ++r.exhaustive_geodesics;
        if (best < 0) {
          best = 0;
          r.witness = Segment::between(ball[a], ball[b]);
        }
        continue;
      }
      const Contribution c = contribution(ball[a], ball[b], proj[a], proj[b], chain, ws);
      ++r.exhaustive_geodesics;
      if (c.value > best) {
        best = c.value;
        r.witness = Segment::between(ball[a], ball[b]);
      }
    }
  }
  r.exhaustive = std::max(best, 0.0);

  DrawSequence rng(sampler.seed, 0, Stream::sampler);
  double half = 0;
  double sampled = 0;
  for (std::size_t s = 0; s < sampler.samples; ++s) {
    const auto lu = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(sampler.sample_radius) + 1));
    const auto lv = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(sampler.sample_radius) + 1));
    const Word u = concat(center, random_reduced_word(rank, lu, rng));
    const Word v = concat(center, random_reduced_word(rank, lv, rng));
    const Contribution c = contribution(u, v, chain.project_index(u), chain.project_index(v), chain, ws);
    ++r.sampled_geodesics;
    if (c.value > sampled) sampled = c.value;
    if (c.value > best) {
      best = c.value;
      r.witness = Segment::between(u, v);
    }
    if (s + 1 == sampler.samples / 2) half = sampled;
  }
  r.sampled = sampled;
  r.measured = std::max(r.exhaustive, r.sampled);
  const double step = grid_step(ws);
  r.K = std::max(step, grid_at_least(r.measured, step));
  // Stabilization: the second half of the samples must not raise the constant.
  if (sampler.samples >= 2 && grid_at_least(half, step) < grid_at_least(sampled, step) &&
      sampled > r.exhaustive) {
    r.status = MeasureStatus::inconclusive;
  }
  if (r.exhaustive_geodesics + r.sampled_geodesics == 0) r.status = MeasureStatus::inconclusive;
  return r;
}

}  // namespace

BgipReport bgip_constant(const Segment& chain, const GeodesicSampler& sampler, const WeightScheme& ws) {
  return bgip_impl(chain, chain.start(), sampler, ws);
}

BgipReport bgip_constant(const DiscreteAxis& axis, const GeodesicSampler& sampler, const WeightScheme& ws) {
  if (axis.orbit_points() < 2) fail(ErrorCode::precondition, "axis too short: a single orbit point");
  return bgip_impl(axis.segment, concat(axis.translate, axis.conjugator), sampler, ws);
}

// ---------------------------------------------------------------------------

Word SchottkySet::product(std::size_t index) const {
  WordBuilder b(rank);
  for (const auto& w : sequences.at(index)) b.append(w);
  return std::move(b).build();
}

Segment SchottkySet::chain(std::size_t index) const { return Segment(Word(rank), product(index)); }

bool SchottkySet::fairly_long(const WeightScheme& ws) const {
  if (!calibrated) return false;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (ws.to_real(ws.word_units(product(i))) < 10.0 * E0) return false;
  }
  return true;
}

std::optional<std::size_t> SchottkySet::match_axis(const Word& steps) const {
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const Word p = product(i);
    if (p == steps || invert(p) == steps) return i;
  }
  return std::nullopt;
}

bool condition2_fails(const Word& product, const Word& x, double K, const WeightScheme& ws) {
  const Segment g(Word(product.rank()), product);
  const std::size_t ix = g.project_index(x);
  if (!below(g.diam_units(0, ix, ws), K, ws)) return true;
  const std::size_t ipx = g.project_index(concat(product, x));
  return !below(g.diam_units(ipx, g.length(), ws), K, ws);
}

namespace {

std::vector<Word> test_points_for(int rank, const SchottkyCheckOptions& o) {
  std::vector<Word> pts = ball_words(rank, o.ball_radius);
  DrawSequence rng(o.seed, 0, Stream::aux);
  const std::size_t span = o.far_max_length >= o.far_min_length ? o.far_max_length - o.far_min_length + 1 : 1;
  for (std::size_t i = 0; i < o.far_points; ++i) {
    const std::size_t len = o.far_min_length + static_cast<std::size_t>(rng.below(span));
    pts.push_back(random_reduced_word(rank, len, rng));
  }
  return pts;
}

}  // namespace

SchottkyVerdict check_schottky(const std::vector<StepTuple>& candidate, double K, const WeightScheme& ws,
                               const SchottkyCheckOptions& options) {
  return check_schottky(candidate, K, ws, test_points_for(ws.rank(), options), options.sampler);
}

SchottkyVerdict check_schottky(const std::vector<StepTuple>& S, double K, const WeightScheme& ws,
                               const std::vector<Word>& test_points, const GeodesicSampler& sampler) {
  SchottkyVerdict v;
  auto reject = [&](std::string why) {
    v.ok = false;
    if (v.certificate.empty()) v.certificate = std::move(why);
    return v;
  };
  if (S.empty()) return reject("empty candidate set");
  const std::size_t M = S.front().size();
  if (M == 0) return reject("sequences must have positive length");
  std::set<std::vector<std::string>> seen;
  for (std::size_t a = 0; a < S.size(); ++a) {
    if (S[a].size() != M) return reject("sequence " + std::to_string(a) + " has length " +
                                        std::to_string(S[a].size()) + ", expected " + std::to_string(M));
    std::vector<std::string> key;
    for (const auto& w : S[a]) {
      check_rank(ws, w);
      key.push_back(w.str());
    }
    if (!seen.insert(key).second) {
      return reject("cardinality rule: sequence " + std::to_string(a) + " is a duplicate");
    }
  }

  std::vector<Word> products;
  // Condition (1): Gamma(alpha) is a geodesic K-BGIP axis.
  v.condition1 = true;
  for (std::size_t a = 0; a < S.size(); ++a) {
    std::vector<Word> pts{Word(ws.rank())};
    std::size_t letters = 0;
    WordBuilder b(ws.rank());
    for (const auto& w : S[a]) {
      if (w.empty()) {
        v.condition1 = false;
        reject("condition (1): sequence " + std::to_string(a) + " contains the identity");
        break;
      }
      b.append(w);
      letters += w.size();
      WordBuilder copy = b;
      pts.push_back(std::move(copy).build());
    }
    const Word prod = std::move(b).build();
    products.push_back(prod);
    if (!v.condition1) continue;
    if (prod.size() != letters) {
      v.condition1 = false;
      reject("condition (1): Gamma(alpha) for sequence " + std::to_string(a) +
             " is not geodesic (product " + prod.str() + " cancels)");
      continue;
    }
    const double q = quasigeodesic_constant(pts, ws);
    const BgipReport br = bgip_constant(Segment(Word(ws.rank()), prod), sampler, ws);
    v.max_quasigeodesic = std::max(v.max_quasigeodesic, q);
    v.max_bgip = std::max(v.max_bgip, br.K);
    if (q > K || br.K > K || br.status != MeasureStatus::ok) {
      v.condition1 = false;
      reject("condition (1): sequence " + std::to_string(a) + " has quasigeodesic constant " +
             std::to_string(q) + " and BGIP constant " + std::to_string(br.K) + " against K = " +
             std::to_string(K));
    }
  }

  // Condition (2): at most one alpha fails at each tested x.
  v.condition2 = true;
  for (const auto& x : test_points) {
    std::size_t failing = 0;
    for (const auto& p : products) {
      if (condition2_fails(p, x, K, ws)) ++failing;
    }
    ++v.tested_points;
    if (failing > v.worst_failures) {
      v.worst_failures = failing;
      v.worst_x = x;
    }
  }
  if (v.worst_failures > 1) {
    v.condition2 = false;
    reject("condition (2): " + std::to_string(v.worst_failures) + " sequences fail at x = '" +
           v.worst_x.str() + "'");
  }

  // Condition (3): (Gamma(alpha), Pi(alpha) Gamma(alpha)) is K-aligned.
  v.condition3 = true;
  for (std::size_t a = 0; a < products.size(); ++a) {
    const Segment g(Word(ws.rank()), products[a]);
    if (!pair_aligned(g, g.translated(products[a]), K, ws)) {
      v.condition3 = false;
      reject("condition (3): sequence " + std::to_string(a) + " is not aligned with its translate");
    }
  }
  v.ok = v.condition1 && v.condition2 && v.condition3;
  return v;
}

// ---------------------------------------------------------------------------

namespace {

Segment random_axis(const SchottkySet& S, const Word& at, DrawSequence& rng) {
  const std::size_t s = static_cast<std::size_t>(rng.below(S.sequences.size()));
  const Word p = S.product(s);
  if (rng.uniform() < 0.5) return Segment(at, p);
  return Segment(at, invert(p));
}

Word random_short(int rank, std::size_t max_len, DrawSequence& rng) {
  return random_reduced_word(rank, static_cast<std::size_t>(rng.below(max_len + 1)), rng);
}

// Worst alignment diameter of (x, kappa_i, y) over the axes, and the largest
// d^sym Hausdorff distance between an axis and its witness subsegment.
struct ChainMeasure {
  double diam = 0;
  double hausdorff = 0;
  bool ordered = false;
};

ChainMeasure chain_measure(const Word& x, const std::vector<Segment>& axes, const Word& y, const WeightScheme& ws) {
  ChainMeasure m;
  for (const auto& k : axes) {
    const AlignmentReport r = check_aligned({Segment::point(x), k, Segment::point(y)}, 1e300, ws);
    m.diam = std::max(m.diam, r.max_diam);
  }
  const WitnessReport w = witness_subsegments(x, axes, y, 1e300, 1e300, ws);
  // Axes that project to a single vertex of [x, y] are not travelled along at
  // all; only chains that make progress through every axis are measured.
  m.ordered = w.ordered && std::all_of(w.segments.begin(), w.segments.end(),
                                       [](const Subsegment& s) { return s.end > s.begin; });
  m.hausdorff = w.max_hausdorff;
  return m;
}

struct ChainSample {
  Word x;
  std::vector<Segment> axes;
  Word y;
};

ChainSample random_chain(const SchottkySet& S, const CalibrationOptions& o, DrawSequence& rng) {
  ChainSample c;
  const int rank = S.rank;
  c.x = random_short(rank, o.max_offset_length, rng);
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(o.max_chain));
  Word at(rank);
  for (std::size_t i = 0; i < n; ++i) {
    at = concat(at, random_short(rank, 2, rng));
    c.axes.push_back(random_axis(S, at, rng));
    at = c.axes.back().end();
  }
  c.y = concat(at, random_short(rank, o.max_offset_length, rng));
  return c;
}

bool chain_aligned(const ChainSample& c, double D, const WeightScheme& ws) {
  std::vector<Segment> all{Segment::point(c.x)};
  all.insert(all.end(), c.axes.begin(), c.axes.end());
  all.push_back(Segment::point(c.y));
  return check_aligned(all, D, ws).aligned;
}

// Sup of `measure` over sampled configurations. The sample count doubles until
// a fresh block as large as everything seen so far leaves the sup unchanged
// (or the round cap is hit). measure returns a negative value when the
// configuration misses the premises.
template <class Measure>
std::pair<double, std::size_t> stabilized_sup(std::size_t base, std::uint64_t phase, const CalibrationOptions& o,
                                              Measure&& measure) {
  double sup = 0;
  std::size_t used = 0, drawn = 0, block = base;
  for (std::size_t round = 0; round < o.max_rounds; ++round) {
    const double before = sup;
    for (std::size_t s = 0; s < block; ++s, ++drawn) {
      DrawSequence rng(o.seed, (phase << 40) + drawn, Stream::calibration);
      const double m = measure(rng);
      if (m < 0) continue;
      sup = std::max(sup, m);
      ++used;
    }
    if (round > 0 && sup == before) break;
    block = drawn;
  }
  return {sup, used};
}

}  // namespace

Constants calibrate_constants(SchottkySet& S, const WeightScheme& ws, const CalibrationOptions& o) {
  if (S.sequences.empty()) fail(ErrorCode::invalid_argument, "cannot calibrate an empty Schottky set");
  if (S.rank != ws.rank()) fail(ErrorCode::rank_mismatch, "Schottky set rank differs from weights");
  const double step = grid_step(ws);
  const int rank = S.rank;
  CalibrationLog& log = S.log;
  log.seed = o.seed;
  log.sample_budget = o.samples;
  log.grid = step;

  // D0: two axes whose start points are K0-aligned with each other.
  const auto [d0, d0n] = stabilized_sup(o.samples, 0, o, [&](DrawSequence& rng) {
    const Segment kappa = random_axis(S, Word(rank), rng);
    Word at = rng.uniform() < 0.7 ? concat(kappa.end(), random_short(rank, 2, rng))
                                  : random_short(rank, o.max_offset_length + S.M0, rng);
    const Segment eta = random_axis(S, at, rng);
    if (!pair_aligned(kappa, Segment::point(eta.start()), S.K0, ws)) return -1.0;
    if (!pair_aligned(Segment::point(kappa.start()), eta, S.K0, ws)) return -1.0;
    const PairDiameters p = pair_diameters(kappa, eta, ws);
    return std::max(p.left, p.right);
  });
  log.d0_samples = d0n;
  log.d0_measured = d0;
  const double D0 = std::max(grid_above(S.K0, step), grid_above(d0, step));

  // D1: D0-aligned chains; alignment of (x, kappa_i, y) and the fellow
  // travelling distance. E0 repeats the sweep with D1 premises and must also
  // cover ten times the fellow travelling distance (the 0.1 E clause).
  auto chain_sweep = [&](double premise, double hausdorff_scale) {
    return [&, premise, hausdorff_scale](DrawSequence& rng) {
      const ChainSample c = random_chain(S, o, rng);
      if (!chain_aligned(c, premise, ws)) return -1.0;
      const ChainMeasure m = chain_measure(c.x, c.axes, c.y, ws);
      return m.ordered ? std::max(m.diam, hausdorff_scale * m.hausdorff) : -1.0;
    };
  };
  const auto [d1, d1n] = stabilized_sup(o.samples, 1, o, chain_sweep(D0, 1.0));
  log.d1_samples = d1n;
  log.d1_measured = d1;
  const double D1 = std::max(grid_above(D0, step), grid_above(d1, step));

  const auto [e0_chain, e0n] = stabilized_sup(o.samples, 2, o, chain_sweep(D1, 10.0));
  // Two-sided dichotomy for D1-aligned pairs and a third point.
  const auto [e0_pair, bn] = stabilized_sup(o.samples, 3, o, [&](DrawSequence& rng) {
    const Segment kappa = random_axis(S, Word(rank), rng);
    const Segment eta = random_axis(S, concat(kappa.end(), random_short(rank, 2, rng)), rng);
    if (!pair_aligned(kappa, eta, D1, ws)) return -1.0;
    const Word p = random_short(rank, o.max_offset_length + 2 * S.M0, rng);
    const PairDiameters a = pair_diameters(Segment::point(p), eta, ws);
    const PairDiameters b = pair_diameters(kappa, Segment::point(p), ws);
    return std::min(std::max(a.left, a.right), std::max(b.left, b.right));
  });
  const double e0 = std::max(e0_chain, e0_pair);
  log.e0_samples = e0n;
  log.behrstock_samples = bn;
  log.e0_measured = e0;
  const double E0 = std::max(grid_above(D1, step), grid_above(e0, step));

  if (d0n < o.min_samples || d1n < o.min_samples || e0n < o.min_samples || bn < o.min_samples) {
    fail(ErrorCode::inconclusive, "calibration inconclusive: too few configurations met the premises (" +
                                      std::to_string(d0n) + ", " + std::to_string(d1n) + ", " +
                                      std::to_string(e0n) + ", " + std::to_string(bn) + ")");
  }
  S.D0 = D0;
  S.D1 = D1;
  S.E0 = E0;
  S.calibrated = true;
  return {D0, D1, E0};
}

// ---------------------------------------------------------------------------

const char* semi_verdict_name(SemiVerdict v) noexcept {
  switch (v) {
    case SemiVerdict::aligned: return "ALIGNED";
    case SemiVerdict::semi_aligned: return "SEMI_ALIGNED";
    case SemiVerdict::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

SemiAlignmentResult check_semi_aligned(const Word& x, const std::vector<Segment>& axes, const Word& y,
                                       double K, const SchottkySet& S, const WeightScheme& ws,
                                       std::size_t pair_budget) {
  check_rank(ws, x);
  check_rank(ws, y);
  for (const auto& a : axes) {
    check_rank(ws, a.start());
    if (!S.match_axis(a.steps())) {
      fail(ErrorCode::invalid_argument, "axis with steps '" + a.steps().str() + "' is not a registered Schottky axis");
    }
  }
  SemiAlignmentResult r;
  std::vector<Segment> chain{Segment::point(x)};
  chain.insert(chain.end(), axes.begin(), axes.end());
  chain.push_back(Segment::point(y));
  r.pair_checks = chain.size() - 1;
  if (check_aligned(chain, K, ws).aligned) {
    r.verdict = SemiVerdict::aligned;
    r.interpolated = axes;
    return r;
  }

  // Candidate Schottky axes read off the geodesic [x, y].
  const Segment g = Segment::between(x, y);
  std::vector<Word> products;
  for (std::size_t i = 0; i < S.sequences.size(); ++i) products.push_back(S.product(i));
  std::vector<Segment> candidates;
  auto letters = g.steps().letters();
  for (std::size_t t = 0; t < g.length(); ++t) {
    for (const auto& p : products) {
      for (const Word& q : {p, invert(p)}) {
        if (t + q.size() > letters.size()) continue;
        if (std::equal(q.letters().begin(), q.letters().end(), letters.begin() + static_cast<std::ptrdiff_t>(t))) {
          candidates.emplace_back(g.vertex(t), q);
        }
      }
    }
  }

  // Stage-wise breadth-first search: from each required node to the next
  // through candidate axes, consecutive pairs K-aligned.
  std::vector<Segment> required{Segment::point(x)};
  required.insert(required.end(), axes.begin(), axes.end());
  required.push_back(Segment::point(y));
  std::vector<Segment> full;
  auto check = [&](const Segment& a, const Segment& b) {
    ++r.pair_checks;
    return pair_aligned(a, b, K, ws);
  };
  for (std::size_t stage = 0; stage + 1 < required.size(); ++stage) {
    const Segment& from = required[stage];
    const Segment& to = required[stage + 1];
    if (check(from, to)) {
      if (stage + 1 < required.size() - 1) full.push_back(to);
      continue;
    }
    // parent index: -1 means `from`
    std::vector<long> parent(candidates.size(), -2);
    std::deque<std::size_t> queue;
    long found = -1;
    for (std::size_t c = 0; c < candidates.size() && found < 0; ++c) {
      if (r.pair_checks >= pair_budget) break;
      if (check(from, candidates[c])) {
        parent[c] = -1;
        queue.push_back(c);
      }
    }
    while (!queue.empty() && found < 0) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if (r.pair_checks >= pair_budget) break;
      if (check(candidates[u], to)) {
        found = static_cast<long>(u);
        break;
      }
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (parent[c] != -2) continue;
        if (r.pair_checks >= pair_budget) break;
        if (check(candidates[u], candidates[c])) {
          parent[c] = static_cast<long>(u);
          queue.push_back(c);
        }
      }
    }
    if (found < 0) {
      r.budget_exhausted = r.pair_checks >= pair_budget;
      r.verdict = SemiVerdict::unknown;
      return r;
    }
    std::vector<Segment> path;
    for (long c = found; c >= 0; c = parent[static_cast<std::size_t>(c)]) {
      path.push_back(candidates[static_cast<std::size_t>(c)]);
    }
    full.insert(full.end(), path.rbegin(), path.rend());
    if (stage + 1 < required.size() - 1) full.push_back(to);
  }
  r.verdict = SemiVerdict::semi_aligned;
  r.interpolated = std::move(full);
  return r;
}

// ---------------------------------------------------------------------------

std::int64_t dsym_to_segment_units(const Word& x, const Segment& seg, const WeightScheme& ws) {
  const Word p = seg.vertex(seg.project_index(x));
  return dist_sym_units(x, p, ws);
}

WitnessReport witness_subsegments(const Word& x, const std::vector<Segment>& axes, const Word& y, double E,
                                  double D, const WeightScheme& ws) {
  std::vector<Segment> chain{Segment::point(x)};
  chain.insert(chain.end(), axes.begin(), axes.end());
  chain.push_back(Segment::point(y));
  if (!check_aligned(chain, D, ws).aligned) {
    fail(ErrorCode::precondition, "witness_subsegments: input chain is not D-aligned");
  }
  const Segment g = Segment::between(x, y);
  WitnessReport r;
  r.ordered = true;
  r.fellow = true;
  r.long_enough = true;
  std::size_t last_end = 0;
  for (const auto& k : axes) {
    Subsegment s;
    const std::size_t j1 = g.project_index(k.start());
    const std::size_t j2 = g.project_index(k.end());
    if (j1 > j2) r.ordered = false;
    s.begin = std::min(j1, j2);
    s.end = std::max(j1, j2);
    if (s.begin < last_end) r.ordered = false;
    last_end = s.end;
    const Segment sub(g.vertex(s.begin), g.steps().suffix(s.begin).prefix(s.end - s.begin));
    s.length = ws.to_real(sub.forward_units(0, sub.length(), ws));
    std::int64_t h = 0;
    for (const auto& v : sub.vertices()) h = std::max(h, dsym_to_segment_units(v, k, ws));
    for (const auto& v : k.vertices()) h = std::max(h, dsym_to_segment_units(v, sub, ws));
    s.hausdorff = ws.to_real(h);
    s.fellow = s.hausdorff <= 0.1 * E;
    s.long_enough = s.length > 100.0 * E;
    r.fellow = r.fellow && s.fellow;
    r.long_enough = r.long_enough && s.long_enough;
    r.max_hausdorff = std::max(r.max_hausdorff, s.hausdorff);
    r.segments.push_back(s);
  }
  r.ok = r.ordered && r.fellow;
  return r;
}

}  // namespace asymwalk
