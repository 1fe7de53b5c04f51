#pragma once

#include "coarse_geometry.hpp"
#include "measure.hpp"

namespace asymwalk {

struct LengthRange {
  std::size_t lo = 3;
  std::size_t hi = 8;
};

struct FindOptions {
  std::size_t budget = 100'000;   // candidate tuples examined at most
  double K0 = 0;                  // 0: max(2 max_w, 1 / min_w)
  std::uint64_t seed = 5;
  bool require_fairly_long = false;
  bool calibrate = true;
  SchottkyCheckOptions check;     // verification of accepted sets
  CalibrationOptions calibration;
};

double default_K0(const WeightScheme& ws);

// Randomized greedy search for a verified Schottky set of the given cardinality
// inside (supp mu)^n, n in the length range. One greedy set is grown per
// length; the first to reach `cardinality` is calibrated and returned.
SchottkySet find_schottky(const MeasureSpec& mu, std::size_t cardinality, LengthRange lengths,
                          const WeightScheme& ws, const FindOptions& options = {});

}  // namespace asymwalk
