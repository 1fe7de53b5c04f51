#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tree_space.hpp"

namespace asymwalk {

// Witness pair for a measure predicate; g, h are elements of supp mu^{*N}.
struct Certificate {
  bool holds = false;
  int power = 0;
  Word g;
  Word h;
  std::string note;
};

// Finitely supported probability measure on F_k.
class MeasureSpec {
 public:
  // Empty probabilities means uniform on the support.
  static MeasureSpec create(int rank, std::vector<Word> support, std::vector<double> probabilities = {});
  static MeasureSpec uniform_letters(int rank, bool symmetric);

  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return support_.size(); }
  const std::vector<Word>& support() const noexcept { return support_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }
  const Word& element(std::size_t i) const { return support_.at(i); }

  // Inverse-CDF draw: index of the support element for a uniform u in [0, 1).
  std::size_t draw(double u) const noexcept;

  // All support elements are single letters.
  bool nearest_neighbor() const noexcept;
  // The reflected measure: mu_check(g) = mu(g^-1).
  MeasureSpec reflected() const;

  bool admissible_claim = false;

 private:
  int rank_ = 0;
  std::vector<Word> support_;
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

// supp mu^{*n}: distinct reduced products of n support elements, capped.
std::vector<Word> convolution_support(const MeasureSpec& mu, int n, std::size_t cap = 50'000);

// Two non-commuting hyperbolic elements in the semigroup generated by supp mu
// (products of at most `max_power` support elements).
Certificate non_elementary(const MeasureSpec& mu, int max_power = 3);
// g, h in supp mu^{*N} with tau(g) != tau(h).
Certificate non_arithmetic(const MeasureSpec& mu, const WeightScheme& ws, int max_power = 3);
// g, h in supp mu^{*N} with tau(g) - tau(g^-1) != tau(h) - tau(h^-1).
Certificate asymptotically_asymmetric(const MeasureSpec& mu, const WeightScheme& ws, int max_power = 3);

// Support contained in a single cyclic subgroup (including the trivial one).
bool is_degenerate(const MeasureSpec& mu);

}  // namespace asymwalk
