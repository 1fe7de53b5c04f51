#include "tree_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace asymwalk {

Rational rational_approximation(double x, std::int64_t max_den) {
  if (!(x > 0) || !std::isfinite(x)) fail(ErrorCode::invalid_argument, "weights must be positive and finite");
  // Continued-fraction convergents; stop once the denominator bound is hit or
  // the approximation is within 1e-12 relative.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(r);
    if (fl > 9.0e15) break;
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(approx - x) <= 1e-12 * x) break;
    const double frac = r - fl;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0 || h1 == 0) fail(ErrorCode::invalid_argument, "weight not representable");
  return {h1, k1};
}

// ---------------------------------------------------------------------------

WeightScheme WeightScheme::uniform(int rank) {
  return from_rationals(rank, std::vector<Rational>(static_cast<std::size_t>(2 * rank), Rational{1, 1}));
}

WeightScheme WeightScheme::from_rationals(int rank, const std::vector<Rational>& weights) {
  if (rank < 1 || rank > 26) fail(ErrorCode::invalid_argument, "rank must be in 1..26");
  if (weights.size() != static_cast<std::size_t>(2 * rank)) {
    fail(ErrorCode::invalid_argument, "expected one weight per signed letter");
  }
  WeightScheme ws;
  ws.rank_ = rank;
  std::int64_t lcm = 1;
  for (auto w : weights) {
    if (w.den <= 0 || w.num <= 0) fail(ErrorCode::invalid_argument, "weights must be strictly positive");
    const std::int64_t g = std::gcd(w.num, w.den);
    w.num /= g;
    w.den /= g;
    ws.weights_.push_back(w);
    lcm = std::lcm(lcm, w.den);
    if (lcm > (std::int64_t{1} << 40)) fail(ErrorCode::overflow, "weight denominators too large");
  }
  ws.denominator_ = lcm;
  for (const auto& w : ws.weights_) {
    const std::int64_t u = w.num * (lcm / w.den);
    if (u > (std::int64_t{1} << 40)) fail(ErrorCode::overflow, "weight too large for exact arithmetic");
    ws.units_.push_back(u);
  }
  ws.min_units_ = *std::min_element(ws.units_.begin(), ws.units_.end());
  ws.max_units_ = *std::max_element(ws.units_.begin(), ws.units_.end());
  return ws;
}

WeightScheme WeightScheme::from_values(int rank, const std::vector<double>& weights) {
  std::vector<Rational> rs;
  rs.reserve(weights.size());
  for (double w : weights) rs.push_back(rational_approximation(w));
  return from_rationals(rank, rs);
}

bool WeightScheme::is_symmetric() const noexcept {
  for (int g = 1; g <= rank_; ++g) {
    if (units(g) != units(-g)) return false;
  }
  return true;
}

std::int64_t WeightScheme::word_units(const Word& w) const {
  std::int64_t s = 0;
  for (Letter l : w.letters()) s += units(l);
  return s;
}

std::int64_t WeightScheme::reverse_units(const Word& w) const {
  std::int64_t s = 0;
  for (Letter l : w.letters()) s += units(-l);
  return s;
}

void check_rank(const WeightScheme& ws, const Word& w) {
  if (w.rank() != ws.rank()) {
    fail(ErrorCode::rank_mismatch, "word of rank " + std::to_string(w.rank()) +
                                       " used with weights of rank " + std::to_string(ws.rank()));
  }
}

// ---------------------------------------------------------------------------

std::int64_t dist_units(const Word& x, const Word& y, const WeightScheme& ws) {
  check_rank(ws, x);
  check_rank(ws, y);
  // x^-1 y reduces to (tail of x)^-1 (tail of y) past the common prefix.
  const std::size_t p = common_prefix_length(x, y);
  std::int64_t s = 0;
  for (std::size_t i = p; i < x.size(); ++i) s += ws.units(-x[i]);
  for (std::size_t i = p; i < y.size(); ++i) s += ws.units(y[i]);
  return s;
}

double dist(const Word& x, const Word& y, const WeightScheme& ws) {
  return ws.to_real(dist_units(x, y, ws));
}

std::int64_t dist_sym_units(const Word& x, const Word& y, const WeightScheme& ws) {
  return dist_units(x, y, ws) + dist_units(y, x, ws);
}

double dist_sym(const Word& x, const Word& y, const WeightScheme& ws) {
  return ws.to_real(dist_sym_units(x, y, ws));
}

std::int64_t gromov_product_twice_units(const Word& x, const Word& y, const Word& z,
                                        const WeightScheme& ws) {
  return dist_units(x, z, ws) + dist_units(z, y, ws) - dist_units(x, y, ws);
}

double gromov_product(const Word& x, const Word& y, const Word& z, const WeightScheme& ws) {
  return 0.5 * ws.to_real(gromov_product_twice_units(x, y, z, ws));
}

std::size_t graph_distance(const Word& x, const Word& y) noexcept {
  const std::size_t p = common_prefix_length(x, y);
  return (x.size() - p) + (y.size() - p);
}

std::vector<Word> geodesic(const Word& x, const Word& y, const WeightScheme& ws) {
  check_rank(ws, x);
  check_rank(ws, y);
  return Segment::between(x, y).vertices();
}

std::int64_t translation_length_units(const Word& g, const WeightScheme& ws, Direction dir) {
  check_rank(ws, g);
  const Word core = cyclic_reduce(g).core;
  return dir == Direction::forward ? ws.word_units(core) : ws.reverse_units(core);
}

double translation_length(const Word& g, const WeightScheme& ws, Direction dir) {
  return ws.to_real(translation_length_units(g, ws, dir));
}

// ---------------------------------------------------------------------------

Segment::Segment(Word start, Word steps)
    : start_(std::move(start)), steps_(std::move(steps)), end_(concat(start_, steps_)) {}

Segment Segment::point(Word p) {
  Word empty(p.rank());
  return Segment(std::move(p), std::move(empty));
}

Segment Segment::between(const Word& x, const Word& y) {
  return Segment(x, concat(invert(x), y));
}

Word Segment::vertex(std::size_t i) const { return concat(start_, steps_.prefix(i)); }

std::vector<Word> Segment::vertices() const {
  std::vector<Word> out;
  out.reserve(length() + 1);
  WordBuilder b(start_.rank());
  b.append(start_);
  out.push_back(start_);
  for (Letter l : steps_.letters()) {
    b.push(l);
    WordBuilder copy = b;
    out.push_back(std::move(copy).build());
  }
  return out;
}

std::size_t Segment::project_index(const Word& x) const {
  // The branch point of the tripod (x, start, end) sits at graph distance
  // (x . end)_start from start.
  const std::size_t a = graph_distance(start_, x);
  const std::size_t b = graph_distance(start_, end_);
  const std::size_t c = graph_distance(x, end_);
  return (a + b - c) / 2;
}

std::int64_t Segment::forward_units(std::size_t i, std::size_t j, const WeightScheme& ws) const {
  std::int64_t s = 0;
  for (std::size_t k = i; k < j; ++k) s += ws.units(steps_[k]);
  return s;
}

std::int64_t Segment::backward_units(std::size_t i, std::size_t j, const WeightScheme& ws) const {
  std::int64_t s = 0;
  for (std::size_t k = i; k < j; ++k) s += ws.units(-steps_[k]);
  return s;
}

std::int64_t Segment::diam_units(std::size_t i, std::size_t j, const WeightScheme& ws) const {
  if (i > j) std::swap(i, j);
  return std::max(forward_units(i, j, ws), backward_units(i, j, ws));
}

Segment Segment::reversed() const { return Segment(end_, invert(steps_)); }

Segment Segment::translated(const Word& g) const { return Segment(concat(g, start_), steps_); }

// ---------------------------------------------------------------------------

std::size_t DiscreteAxis::orbit_vertex_index(long n) const {
  return static_cast<std::size_t>(n - window.lo) * core.size();
}

DiscreteAxis axis_of(const Word& g, const Word& base, Window window, const WeightScheme& ws) {
  check_rank(ws, g);
  check_rank(ws, base);
  if (window.lo > window.hi) fail(ErrorCode::invalid_argument, "axis window is empty");
  auto [core, conj] = cyclic_reduce(g);
  if (core.empty()) fail(ErrorCode::not_hyperbolic, "not hyperbolic: element " + g.str() + " has trivial cyclic core");

  DiscreteAxis axis;
  axis.translate = base;
  axis.generator = g;
  axis.core = core;
  axis.conjugator = conj;
  axis.window = window;
  const Word anchor = concat(concat(base, conj), power(core, window.lo));
  axis.segment = Segment(anchor, power(core, window.hi - window.lo));

  // The chain must be geodesic: its endpoint distance equals the summed edges.
  const std::int64_t along = axis.segment.forward_units(0, axis.segment.length(), ws);
  if (dist_units(axis.segment.start(), axis.segment.end(), ws) != along) {
    fail(ErrorCode::precondition, "axis chain is not geodesic");
  }
  return axis;
}

DiscreteAxis extend_axis(const DiscreteAxis& axis, Window window, const WeightScheme& ws) {
  Window w{std::min(axis.window.lo, window.lo), std::max(axis.window.hi, window.hi)};
  return axis_of(axis.generator, axis.translate, w, ws);
}

Projection project_to_segment(const Word& x, const Segment& seg, const WeightScheme& ws) {
  check_rank(ws, x);
  Projection p;
  p.index = seg.project_index(x);
  p.vertex = seg.vertex(p.index);
  p.distance_units = dist_units(x, p.vertex, ws);
  p.distance = ws.to_real(p.distance_units);
  return p;
}

Projection project_to_axis(const Word& x, const DiscreteAxis& axis, const WeightScheme& ws) {
  Projection p = project_to_segment(x, axis.segment, ws);
  const bool at_end = p.index == 0 || p.index == axis.segment.length();
  if (!at_end || axis.segment.length() == 0) return p;

  // The projection onto the full axis is within graph distance |x| + |anchor|
  // of the orbit point n = 0, so a window of that many periods suffices.
  const Word origin = concat(axis.translate, axis.conjugator);
  const long reach =
      static_cast<long>(graph_distance(x, origin) / axis.core.size()) + 2;
  const DiscreteAxis wide = extend_axis(axis, Window{-reach, reach}, ws);
  Projection q = project_to_segment(x, wide.segment, ws);
  q.boundary_hit = q.vertex != p.vertex;
  // Index relative to the caller's window, clamped when the vertex lies outside it.
  const long shift = static_cast<long>(wide.orbit_vertex_index(axis.window.lo));
  q.index = static_cast<std::size_t>(std::max(0L, static_cast<long>(q.index) - shift));
  return q;
}

}  // namespace asymwalk
