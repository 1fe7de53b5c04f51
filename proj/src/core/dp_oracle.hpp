#pragma once

#include <cstdint>
#include <vector>

#include "measure.hpp"

namespace asymwalk {

// Exact law of d(o, Z_n o) as atoms over weight units.
struct DisplacementLaw {
  std::size_t n = 0;
  std::int64_t denominator = 1;
  std::vector<std::int64_t> units;  // increasing
  std::vector<double> probs;

  double mean() const;
  double variance() const;
  double lower_tail(double x) const;  // P(d <= x)
  double upper_tail(double x) const;  // P(d >= x)
};

// Nearest-neighbour measures only. Uniform measures on all 2k letters use a
// radial reduction (word length is a birth-death chain and the word is uniform
// on its sphere); other nearest-neighbour measures use a last-exit
// decomposition. Work beyond `budget` elementary updates raises `unsupported`.
DisplacementLaw displacement_law(const MeasureSpec& mu, std::size_t n, const WeightScheme& ws,
                                 double budget = 6e8);

// E d(o, Z_n o) / n without the full law where a closed form exists.
double exact_drift(const MeasureSpec& mu, std::size_t n, const WeightScheme& ws);

// Brute-force enumeration over all |supp mu|^n step sequences; small n only.
DisplacementLaw enumerate_displacement(const MeasureSpec& mu, std::size_t n, const WeightScheme& ws);

}  // namespace asymwalk
