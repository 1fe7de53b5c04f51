#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tree_space.hpp"

namespace asymwalk {

// Resolution used for every measured constant: a quarter of the lightest edge.
double grid_step(const WeightScheme& ws);
// Smallest grid value strictly above x.
double grid_above(double x, double step);
// Smallest grid value at or above x.
double grid_at_least(double x, double step);

// ---- alignment -------------------------------------------------------------

struct PairDiameters {
  // diam(end of left ∪ projection of right onto left)
  std::int64_t left_units = 0;
  double left = 0;
  // diam(start of right ∪ projection of left onto right)
  std::int64_t right_units = 0;
  double right = 0;
  // Projection of the right path onto the left one, and vice versa, as index ranges.
  std::size_t left_lo = 0, left_hi = 0;
  std::size_t right_lo = 0, right_hi = 0;
};

struct AlignmentReport {
  double threshold = 0;
  std::vector<PairDiameters> pairs;
  double max_diam = 0;
  bool aligned = true;  // every recorded diameter < threshold
};

// C-alignment of a chain of paths; points are segments without steps.
AlignmentReport check_aligned(const std::vector<Segment>& paths, double C, const WeightScheme& ws);
PairDiameters pair_diameters(const Segment& left, const Segment& right, const WeightScheme& ws);
bool pair_aligned(const Segment& left, const Segment& right, double C, const WeightScheme& ws);

// ---- quasigeodesic and BGIP constants ------------------------------------------

// Smallest grid K with |t-s|/K - K <= d(p_s, p_t) <= K|t-s| + K in both orders,
// for the orbit points p_0..p_m of a chain parametrized by step index.
double quasigeodesic_constant(const std::vector<Word>& orbit_points, const WeightScheme& ws);

struct GeodesicSampler {
  int exhaustive_radius = 6;    // all geodesics between vertices of this ball
  int sample_radius = 12;       // random geodesics with endpoints in this ball
  std::size_t samples = 10'000;
  std::uint64_t seed = 1;
};

enum class MeasureStatus { ok, inconclusive };

struct BgipReport {
  double K = 0;               // reported constant, never below one grid step
  double measured = 0;        // max over geodesics of min(d^sym(eta, A), diam pi_A(eta))
  double exhaustive = 0;      // part of `measured` from the exhaustive ball
  double sampled = 0;         // part of `measured` from the random geodesics
  std::size_t exhaustive_geodesics = 0;
  std::size_t sampled_geodesics = 0;
  MeasureStatus status = MeasureStatus::ok;
  Segment witness;            // geodesic attaining `measured`
};

// BGIP constant of a finite geodesic chain. The ball is centred at the chain start.
BgipReport bgip_constant(const Segment& chain, const GeodesicSampler& sampler, const WeightScheme& ws);
// Axis form; fails with "axis too short" when the window holds a single orbit point.
BgipReport bgip_constant(const DiscreteAxis& axis, const GeodesicSampler& sampler, const WeightScheme& ws);

// ---- Schottky sets ---------------------------------------------------------------

using StepTuple = std::vector<Word>;

struct CalibrationLog {
  std::uint64_t seed = 0;
  std::size_t sample_budget = 0;
  std::size_t d0_samples = 0;
  std::size_t d1_samples = 0;
  std::size_t e0_samples = 0;
  std::size_t behrstock_samples = 0;
  double d0_measured = 0;
  double d1_measured = 0;
  double e0_measured = 0;
  double grid = 0;
  std::size_t test_points = 0;   // x tested for condition (2)
  int test_ball_radius = 0;
  std::size_t candidates_examined = 0;
};

struct SchottkySet {
  int rank = 0;
  double K0 = 0;
  std::size_t M0 = 0;
  std::vector<StepTuple> sequences;
  double D0 = 0;
  double D1 = 0;
  double E0 = 0;
  bool calibrated = false;
  CalibrationLog log;

  Word product(std::size_t index) const;
  // Gamma(alpha) as a geodesic chain from o.
  Segment chain(std::size_t index) const;
  // d(o, Pi(alpha) o) >= 10 E0 for every alpha.
  bool fairly_long(const WeightScheme& ws) const;
  // Index of the sequence whose product (or inverse product) equals `steps`.
  std::optional<std::size_t> match_axis(const Word& steps) const;
};

struct SchottkyCheckOptions {
  int ball_radius = 6;             // every x in this ball is tested
  std::size_t far_points = 1000;   // plus random far points
  std::size_t far_min_length = 12;
  std::size_t far_max_length = 48;
  std::uint64_t seed = 1;
  GeodesicSampler sampler{3, 8, 500, 1};
};

struct SchottkyVerdict {
  bool ok = false;
  bool condition1 = false;
  bool condition2 = false;
  bool condition3 = false;
  std::string certificate;        // first failure, human readable
  std::size_t tested_points = 0;
  std::size_t worst_failures = 0; // max over x of #failing alpha
  Word worst_x;
  double max_bgip = 0;
  double max_quasigeodesic = 0;
};

SchottkyVerdict check_schottky(const std::vector<StepTuple>& candidate, double K, const WeightScheme& ws,
                               const SchottkyCheckOptions& options = {});
// Same, over an explicit list of test points instead of the ball plus far points.
SchottkyVerdict check_schottky(const std::vector<StepTuple>& candidate, double K, const WeightScheme& ws,
                               const std::vector<Word>& test_points, const GeodesicSampler& sampler);

// Points x at which at least one condition-(2) alignment fails for `alpha`.
bool condition2_fails(const Word& product, const Word& x, double K, const WeightScheme& ws);

struct CalibrationOptions {
  std::size_t samples = 4000;
  std::size_t min_samples = 200;
  std::size_t max_offset_length = 6;
  std::size_t max_chain = 4;
  std::size_t max_rounds = 6;     // doublings of the sample count per constant
  std::uint64_t seed = 11;
};

struct Constants {
  double D0 = 0;
  double D1 = 0;
  double E0 = 0;
};

// Empirical D0 <= D1 <= E0 for S; fills S.D0/D1/E0 and the log.
Constants calibrate_constants(SchottkySet& S, const WeightScheme& ws, const CalibrationOptions& options = {});

// ---- semi-alignment -----------------------------------------------------------

enum class SemiVerdict { aligned, semi_aligned, unknown };
const char* semi_verdict_name(SemiVerdict v) noexcept;

struct SemiAlignmentResult {
  SemiVerdict verdict = SemiVerdict::unknown;
  std::vector<Segment> interpolated;  // full aligned chain when found (without x, y)
  std::size_t pair_checks = 0;
  bool budget_exhausted = false;
};

// Axes must be Schottky axes of S: translates of Gamma(s) or of its reversal.
SemiAlignmentResult check_semi_aligned(const Word& x, const std::vector<Segment>& axes, const Word& y,
                                       double K, const SchottkySet& S, const WeightScheme& ws,
                                       std::size_t pair_budget = 20'000);

// ---- fellow travelling ------------------------------------------------------------

struct Subsegment {
  std::size_t begin = 0;  // indices along the geodesic [x, y]
  std::size_t end = 0;
  double length = 0;      // forward weight of the subsegment
  double hausdorff = 0;   // d^sym Hausdorff distance to the axis
  bool fellow = false;    // hausdorff <= 0.1 E
  bool long_enough = false;  // length > 100 E
};

struct WitnessReport {
  std::vector<Subsegment> segments;
  bool ordered = false;
  bool fellow = false;
  bool long_enough = false;
  double max_hausdorff = 0;
  bool ok = false;  // ordered and fellow travelling
};

// Requires (x, axes..., y) to be D-aligned (precondition error otherwise).
WitnessReport witness_subsegments(const Word& x, const std::vector<Segment>& axes, const Word& y, double E,
                                  double D, const WeightScheme& ws);

// d^sym distance from a vertex to a segment (attained at the projection).
std::int64_t dsym_to_segment_units(const Word& x, const Segment& seg, const WeightScheme& ws);

}  // namespace asymwalk
