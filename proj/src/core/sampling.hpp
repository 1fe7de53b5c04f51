#pragma once

#include <vector>

#include "rng.hpp"
#include "words.hpp"

namespace asymwalk {

// Uniform freely reduced word of exactly `length` letters.
inline Word random_reduced_word(int rank, std::size_t length, DrawSequence& rng) {
  WordBuilder b(rank);
  // Letter codes 0..2k-1 map to x_1..x_k, x_1^-1..x_k^-1.
  auto code_letter = [rank](int c) { return c < rank ? c + 1 : -(c - rank + 1); };
  auto letter_code = [rank](Letter l) { return l > 0 ? l - 1 : rank - l - 1; };
  Letter prev = 0;
  for (std::size_t i = 0; i < length; ++i) {
    int c;
    if (prev == 0) {
      c = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * rank)));
    } else {
      c = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * rank - 1)));
      if (c >= letter_code(-prev)) ++c;
    }
    prev = code_letter(c);
    b.push(prev);
  }
  return std::move(b).build();
}

// All reduced words of length <= radius, in shortlex order of letter codes.
inline std::vector<Word> ball_words(int rank, int radius) {
  std::vector<Word> out{Word(rank)};
  std::size_t level_begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int g = 1; g <= rank; ++g) {
        for (Letter l : {g, -g}) {
          const Word& w = out[i];
          if (!w.empty() && w.back() == -l) continue;
          WordBuilder b(rank);
          b.append(w);
          b.push(l);
          out.push_back(std::move(b).build());
        }
      }
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace asymwalk
