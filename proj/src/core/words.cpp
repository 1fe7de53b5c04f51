#include "words.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace asymwalk {

namespace {

std::atomic<std::size_t> g_word_cap{kDefaultWordCap};

void check_letter(int rank, Letter l) {
  if (l == 0 || std::abs(l) > rank) {
    fail(ErrorCode::out_of_range, "generator index " + std::to_string(l) +
                                      " out of range for rank " + std::to_string(rank));
  }
}

}  // namespace

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::rank_mismatch: return "rank_mismatch";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::not_hyperbolic: return "not_hyperbolic";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::budget_exhausted: return "budget_exhausted";
    case ErrorCode::inconclusive: return "inconclusive";
    case ErrorCode::degenerate_measure: return "degenerate_measure";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

std::size_t word_length_cap() noexcept { return g_word_cap.load(std::memory_order_relaxed); }

void set_word_length_cap(std::size_t cap) noexcept {
  g_word_cap.store(cap == 0 ? kDefaultWordCap : cap, std::memory_order_relaxed);
}

char letter_char(Letter l) {
  if (l == 0 || std::abs(l) > 26) fail(ErrorCode::out_of_range, "letter has no text form");
  return l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1);
}

Letter char_letter(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a' + 1;
  if (c >= 'A' && c <= 'Z') return -(c - 'A' + 1);
  fail(ErrorCode::invalid_argument, std::string("invalid letter '") + c + "'");
}

void check_same_rank(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) {
    fail(ErrorCode::rank_mismatch, "rank mismatch: " + std::to_string(u.rank()) + " vs " +
                                       std::to_string(v.rank()));
  }
}

// ---------------------------------------------------------------------------

WordBuilder::WordBuilder(int rank, std::size_t cap) : rank_(rank), cap_(cap) {}

void WordBuilder::push(Letter l) {
  if (!stack_.empty() && stack_.back() == -l) {
    stack_.pop_back();
    return;
  }
  if (stack_.size() >= cap_) {
    fail(ErrorCode::overflow, "word length exceeds cap of " + std::to_string(cap_) + " letters");
  }
  stack_.push_back(l);
}

void WordBuilder::append(const Word& w) {
  auto ls = w.letters();
  std::size_t i = 0;
  while (i < ls.size() && !stack_.empty() && stack_.back() == -ls[i]) {
    stack_.pop_back();
    ++i;
  }
  if (stack_.size() + (ls.size() - i) > cap_) {
    fail(ErrorCode::overflow, "word length exceeds cap of " + std::to_string(cap_) + " letters");
  }
  stack_.insert(stack_.end(), ls.begin() + static_cast<std::ptrdiff_t>(i), ls.end());
}

void WordBuilder::append_inverse(const Word& w) {
  auto ls = w.letters();
  std::size_t i = ls.size();
  while (i > 0 && !stack_.empty() && stack_.back() == ls[i - 1]) {
    stack_.pop_back();
    --i;
  }
  if (stack_.size() + i > cap_) {
    fail(ErrorCode::overflow, "word length exceeds cap of " + std::to_string(cap_) + " letters");
  }
  for (; i > 0; --i) stack_.push_back(-ls[i - 1]);
}

Word WordBuilder::build() && { return Word(rank_, std::move(stack_)); }

// ---------------------------------------------------------------------------

Word::Word(int rank) : rank_(rank) {
  if (rank < 1) fail(ErrorCode::invalid_argument, "rank must be positive");
}

Word Word::reduce(int rank, std::span<const Letter> raw) {
  if (rank < 1) fail(ErrorCode::invalid_argument, "rank must be positive");
  WordBuilder b(rank);
  for (Letter l : raw) {
    check_letter(rank, l);
    b.push(l);
  }
  return std::move(b).build();
}

Word Word::parse(int rank, std::string_view text) {
  if (rank < 1 || rank > 26) fail(ErrorCode::invalid_argument, "text format supports rank 1..26");
  if (text == "1") return Word(rank);
  std::vector<Letter> raw;
  raw.reserve(text.size());
  for (char c : text) {
    if (c == ' ' || c == '.' || c == '*') continue;
    raw.push_back(char_letter(c));
  }
  return reduce(rank, raw);
}

Word Word::generator(int rank, int index) {
  check_letter(rank, index);
  return Word(rank, std::vector<Letter>{index});
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(letter_char(l));
  return s;
}

Word Word::prefix(std::size_t k) const {
  k = std::min(k, letters_.size());
  return Word(rank_, std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(k)));
}

Word Word::suffix(std::size_t k) const {
  k = std::min(k, letters_.size());
  return Word(rank_, std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(k), letters_.end()));
}

Word concat(const Word& u, const Word& v) {
  check_same_rank(u, v);
  WordBuilder b(u.rank());
  b.append(u);
  b.append(v);
  return std::move(b).build();
}

Word invert(const Word& w) {
  WordBuilder b(w.rank());
  b.append_inverse(w);
  return std::move(b).build();
}

Word power(const Word& w, long exponent) {
  WordBuilder b(w.rank());
  for (long i = 0; i < std::labs(exponent); ++i) {
    if (exponent > 0) {
      b.append(w);
    } else {
      b.append_inverse(w);
    }
  }
  return std::move(b).build();
}

bool is_cyclically_reduced(const Word& w) noexcept {
  return w.size() < 2 || w.front() != -w.back();
}

CyclicReduction cyclic_reduce(const Word& w) {
  auto ls = w.letters();
  std::size_t lo = 0;
  std::size_t hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  return {w.suffix(lo).prefix(hi - lo), w.prefix(lo)};
}

std::size_t common_prefix_length(const Word& u, const Word& v) noexcept {
  auto a = u.letters();
  auto b = v.letters();
  auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  return static_cast<std::size_t>(ia - a.begin());
}

}  // namespace asymwalk
