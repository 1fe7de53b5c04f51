#pragma once

// Shared generators and independent oracles for the unit tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tree_space.hpp"
#include "words.hpp"

namespace asymwalk::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline Letter random_letter(int rank, std::mt19937_64& g = rng()) {
  std::uniform_int_distribution<int> pick(1, 2 * rank);
  const int v = pick(g);
  return v <= rank ? v : -(v - rank);
}

inline std::vector<Letter> random_raw(int rank, std::size_t len, std::mt19937_64& g = rng()) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(random_letter(rank, g));
  return out;
}

inline Word random_word(int rank, std::size_t max_len, std::mt19937_64& g = rng()) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  return Word::reduce(rank, random_raw(rank, len(g), g));
}

// Pairwise cancellation repeated to a fixpoint; quadratic but obviously right.
inline std::vector<Letter> fixpoint_reduce(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

// Distance by walking the tree path explicitly: up from x to the branch
// point (edges traversed against their letters), then down to y.
inline double oracle_dist(const Word& x, const Word& y, const std::vector<double>& w_pos,
                          const std::vector<double>& w_neg) {
  auto weight = [&](Letter l) {
    return l > 0 ? w_pos[static_cast<std::size_t>(l - 1)] : w_neg[static_cast<std::size_t>(-l - 1)];
  };
  std::size_t p = 0;
  while (p < x.size() && p < y.size() && x[p] == y[p]) ++p;
  double d = 0;
  for (std::size_t i = x.size(); i > p; --i) d += weight(-x[i - 1]);
  for (std::size_t i = p; i < y.size(); ++i) d += weight(y[i]);
  return d;
}

// Weights w(a)=1, w(A)=2, w(b)=1, w(B)=3.
inline WeightScheme asym_weights() { return WeightScheme::from_values(2, {1, 2, 1, 3}); }

inline Word W(const char* s, int rank = 2) { return Word::parse(rank, s); }

}  // namespace asymwalk::testing
