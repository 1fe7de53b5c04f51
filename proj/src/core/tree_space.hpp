#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "words.hpp"

namespace asymwalk {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Closest rational to x with denominator at most max_den (continued fractions).
Rational rational_approximation(double x, std::int64_t max_den = 1'000'000);

// Directed edge weights on the Cayley tree of F_k: one strictly positive
// rational per signed letter. All distances are exact multiples of
// 1/denominator(), and are reported in those "units" by the *_units functions.
class WeightScheme {
 public:
  static WeightScheme uniform(int rank);
  // weights[2*(g-1)] is w(x_g), weights[2*(g-1)+1] is w(x_g^-1).
  static WeightScheme from_rationals(int rank, const std::vector<Rational>& weights);
  static WeightScheme from_values(int rank, const std::vector<double>& weights);

  int rank() const noexcept { return rank_; }
  std::int64_t denominator() const noexcept { return denominator_; }
  std::int64_t units(Letter l) const noexcept { return units_[slot(l)]; }
  Rational rational(Letter l) const noexcept { return weights_[slot(l)]; }
  double weight(Letter l) const noexcept { return to_real(units(l)); }
  double to_real(std::int64_t units) const noexcept {
    return static_cast<double>(units) / static_cast<double>(denominator_);
  }

  std::int64_t min_units() const noexcept { return min_units_; }
  std::int64_t max_units() const noexcept { return max_units_; }
  double min_weight() const noexcept { return to_real(min_units_); }
  double max_weight() const noexcept { return to_real(max_units_); }
  // C_w = max(w) / min(w); d(x, y) <= C_w d(y, x) for all x, y.
  double symmetry_ratio() const noexcept {
    return static_cast<double>(max_units_) / static_cast<double>(min_units_);
  }
  bool is_symmetric() const noexcept;

  // Forward weight of a word (d(o, w o)) and of its inverse (d(w o, o)).
  std::int64_t word_units(const Word& w) const;
  std::int64_t reverse_units(const Word& w) const;

 private:
  static std::size_t slot(Letter l) noexcept {
    return l > 0 ? static_cast<std::size_t>(2 * (l - 1)) : static_cast<std::size_t>(2 * (-l - 1) + 1);
  }

  int rank_ = 0;
  std::int64_t denominator_ = 1;
  std::int64_t min_units_ = 1;
  std::int64_t max_units_ = 1;
  std::vector<Rational> weights_;
  std::vector<std::int64_t> units_;
};

void check_rank(const WeightScheme& ws, const Word& w);

// ---- metric ----------------------------------------------------------------

std::int64_t dist_units(const Word& x, const Word& y, const WeightScheme& ws);
double dist(const Word& x, const Word& y, const WeightScheme& ws);
std::int64_t dist_sym_units(const Word& x, const Word& y, const WeightScheme& ws);
double dist_sym(const Word& x, const Word& y, const WeightScheme& ws);

// (x, y)_z = 1/2 [d(x, z) + d(z, y) - d(x, y)]; the *_twice_units variant
// returns 2 (x, y)_z in exact units.
std::int64_t gromov_product_twice_units(const Word& x, const Word& y, const Word& z,
                                        const WeightScheme& ws);
double gromov_product(const Word& x, const Word& y, const Word& z, const WeightScheme& ws);

// Unique vertex path from x to y.
std::vector<Word> geodesic(const Word& x, const Word& y, const WeightScheme& ws);

// Number of edges between two vertices (unit-weight tree distance).
std::size_t graph_distance(const Word& x, const Word& y) noexcept;

enum class Direction { forward, backward };

std::int64_t translation_length_units(const Word& g, const WeightScheme& ws,
                                      Direction dir = Direction::forward);
double translation_length(const Word& g, const WeightScheme& ws,
                          Direction dir = Direction::forward);

// ---- geodesic segments -------------------------------------------------------

// A geodesic vertex chain start, start*s_1, start*s_1 s_2, ..., start*steps in
// the tree. Points are segments with no steps.
class Segment {
 public:
  Segment() = default;
  Segment(Word start, Word steps);
  static Segment point(Word p);
  static Segment between(const Word& x, const Word& y);

  const Word& start() const noexcept { return start_; }
  const Word& steps() const noexcept { return steps_; }
  const Word& end() const noexcept { return end_; }
  std::size_t length() const noexcept { return steps_.size(); }
  bool is_point() const noexcept { return steps_.empty(); }
  int rank() const noexcept { return start_.rank(); }

  Word vertex(std::size_t i) const;
  std::vector<Word> vertices() const;

  // Index of the unique vertex of the segment closest to x (for any positive
  // weights, since every path from x to the segment passes through it).
  std::size_t project_index(const Word& x) const;

  // Weight of the sub-chain between indices i <= j, read forwards and backwards.
  std::int64_t forward_units(std::size_t i, std::size_t j, const WeightScheme& ws) const;
  std::int64_t backward_units(std::size_t i, std::size_t j, const WeightScheme& ws) const;
  // diam of the vertex set {i..j}: max of both directions.
  std::int64_t diam_units(std::size_t i, std::size_t j, const WeightScheme& ws) const;

  Segment reversed() const;
  Segment translated(const Word& g) const;

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.start_ == b.start_ && a.steps_ == b.steps_;
  }

 private:
  Word start_;
  Word steps_;
  Word end_;
};

struct Projection {
  Word vertex;
  std::size_t index = 0;
  double distance = 0;          // d(x, vertex)
  std::int64_t distance_units = 0;
  bool boundary_hit = false;    // projection landed on a truncated window end
};

// ---- axes --------------------------------------------------------------------

struct Window {
  long lo = -2;
  long hi = 2;
};

// Finite window of the axis of a hyperbolic element: the filled-in geodesic
// through translate * c * core^n for n in [lo, hi], where g = c core c^-1.
struct DiscreteAxis {
  Word translate;
  Word generator;
  Word core;
  Word conjugator;
  Window window;
  Segment segment;

  std::size_t orbit_vertex_index(long n) const;
  std::size_t orbit_points() const { return static_cast<std::size_t>(window.hi - window.lo + 1); }
};

DiscreteAxis axis_of(const Word& g, const Word& base, Window window, const WeightScheme& ws);
// Same axis over a wider window (the union of both windows).
DiscreteAxis extend_axis(const DiscreteAxis& axis, Window window, const WeightScheme& ws);

Projection project_to_segment(const Word& x, const Segment& seg, const WeightScheme& ws);
// Projection onto the bi-infinite axis. The window is widened internally when
// the projection would land on a truncated end; boundary_hit reports that the
// caller's window was too small.
Projection project_to_axis(const Word& x, const DiscreteAxis& axis, const WeightScheme& ws);

}  // namespace asymwalk
