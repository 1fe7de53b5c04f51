#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace asymwalk {

// A signed generator index: +g is the g-th free generator, -g its inverse.
using Letter = std::int32_t;

constexpr Letter inverse(Letter l) noexcept { return -l; }

inline constexpr std::size_t kDefaultWordCap = 10'000'000;

// Process-wide hard cap on the length of any word produced by concatenation
// or substitution. Exceeding it raises ErrorCode::overflow.
std::size_t word_length_cap() noexcept;
void set_word_length_cap(std::size_t cap) noexcept;

// Freely reduced word in the free group of the given rank.
//
// Text format: generators are `a`..`z`, their inverses `A`..`Z` (so rank is at
// most 26). The identity prints as the empty string; the parser also accepts
// `1` for it.
class Word {
 public:
  Word() = default;
  explicit Word(int rank);

  static Word reduce(int rank, std::span<const Letter> raw);
  static Word parse(int rank, std::string_view text);
  static Word generator(int rank, int index);  // index in 1..rank

  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  std::string str() const;

  // Prefix of length k and the suffix starting at k, as reduced words.
  Word prefix(std::size_t k) const;
  Word suffix(std::size_t k) const;

  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  Word(int rank, std::vector<Letter> reduced) : rank_(rank), letters_(std::move(reduced)) {}

  friend class WordBuilder;

  int rank_ = 0;
  std::vector<Letter> letters_;
};

// Stack-based incremental reducer; the hot path for products and substitutions.
class WordBuilder {
 public:
  explicit WordBuilder(int rank, std::size_t cap = word_length_cap());

  void push(Letter l);
  void append(const Word& w);
  void append_inverse(const Word& w);
  std::size_t size() const noexcept { return stack_.size(); }
  Word build() &&;

 private:
  int rank_;
  std::size_t cap_;
  std::vector<Letter> stack_;
};

Word concat(const Word& u, const Word& v);
Word invert(const Word& w);
Word power(const Word& w, long exponent);

struct CyclicReduction {
  Word core;
  Word conjugator;  // w == conjugator * core * conjugator^-1
};

CyclicReduction cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w) noexcept;

std::size_t common_prefix_length(const Word& u, const Word& v) noexcept;

// Letter <-> character helpers for the text format.
char letter_char(Letter l);
Letter char_letter(char c);

void check_same_rank(const Word& u, const Word& v);

}  // namespace asymwalk
