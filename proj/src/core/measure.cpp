#include "measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace asymwalk {

MeasureSpec MeasureSpec::create(int rank, std::vector<Word> support, std::vector<double> probabilities) {
  if (rank < 1) fail(ErrorCode::invalid_argument, "rank must be positive");
  if (support.empty()) fail(ErrorCode::invalid_argument, "measure support is empty");
  for (const auto& w : support) {
    if (w.rank() != rank) fail(ErrorCode::rank_mismatch, "support element '" + w.str() + "' has wrong rank");
  }
  if (probabilities.empty()) probabilities.assign(support.size(), 1.0 / static_cast<double>(support.size()));
  if (probabilities.size() != support.size()) {
    fail(ErrorCode::invalid_argument, "support and probabilities differ in length");
  }
  double total = 0;
  for (double p : probabilities) {
    if (!(p > 0) || !std::isfinite(p)) fail(ErrorCode::invalid_argument, "probabilities must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::invalid_argument, "probabilities sum to " + std::to_string(total) + ", not 1");
  }
  MeasureSpec m;
  m.rank_ = rank;
  m.support_ = std::move(support);
  m.probs_ = std::move(probabilities);
  double c = 0;
  for (double p : m.probs_) {
    c += p;
    m.cdf_.push_back(c);
  }
  m.cdf_.back() = 1.0;
  return m;
}

MeasureSpec MeasureSpec::uniform_letters(int rank, bool symmetric) {
  std::vector<Word> s;
  for (int g = 1; g <= rank; ++g) {
    s.push_back(Word::generator(rank, g));
    if (symmetric) s.push_back(Word::generator(rank, -g));
  }
  MeasureSpec m = create(rank, std::move(s));
  m.admissible_claim = symmetric;
  return m;
}

std::size_t MeasureSpec::draw(double u) const noexcept {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto i = static_cast<std::size_t>(it - cdf_.begin());
  return std::min(i, cdf_.size() - 1);
}

bool MeasureSpec::nearest_neighbor() const noexcept {
  return std::all_of(support_.begin(), support_.end(), [](const Word& w) { return w.size() == 1; });
}

MeasureSpec MeasureSpec::reflected() const {
  std::vector<Word> inv;
  inv.reserve(support_.size());
  for (const auto& w : support_) inv.push_back(invert(w));
  MeasureSpec m = create(rank_, std::move(inv), probs_);
  m.admissible_claim = admissible_claim;
  return m;
}

std::vector<Word> convolution_support(const MeasureSpec& mu, int n, std::size_t cap) {
  std::set<std::vector<Letter>> seen;
  std::vector<Word> cur{Word(mu.rank())};
  for (int step = 0; step < n; ++step) {
    std::vector<Word> next;
    seen.clear();
    for (const auto& w : cur) {
      for (const auto& s : mu.support()) {
        Word p = concat(w, s);
        std::vector<Letter> key(p.letters().begin(), p.letters().end());
        if (seen.insert(std::move(key)).second) next.push_back(std::move(p));
        if (next.size() >= cap) break;
      }
      if (next.size() >= cap) break;
    }
    cur = std::move(next);
  }
  return cur;
}

namespace {

bool commute(const Word& g, const Word& h) { return concat(g, h) == concat(h, g); }

}  // namespace

bool is_degenerate(const MeasureSpec& mu) {
  const auto& s = mu.support();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!commute(s[i], s[j])) return false;
    }
  }
  return true;
}

Certificate non_elementary(const MeasureSpec& mu, int max_power) {
  Certificate c;
  std::vector<Word> hyperbolic;
  for (int n = 1; n <= max_power; ++n) {
    for (const auto& w : convolution_support(mu, n, 2000)) {
      if (cyclic_reduce(w).core.empty()) continue;
      for (const auto& h : hyperbolic) {
        if (!commute(h, w)) {
          c.holds = true;
          c.power = n;
          c.g = h;
          c.h = w;
          c.note = "non-commuting hyperbolic elements";
          return c;
        }
      }
      hyperbolic.push_back(w);
    }
  }
  c.note = "no two independent hyperbolic elements among products of at most " + std::to_string(max_power) +
           " steps";
  return c;
}

namespace {

template <class Key>
Certificate search_distinct(const MeasureSpec& mu, int max_power, Key key, const char* what) {
  Certificate c;
  for (int n = 1; n <= max_power; ++n) {
    const auto elems = convolution_support(mu, n, 5000);
    if (elems.empty()) continue;
    const auto k0 = key(elems.front());
    const Word inv = invert(elems.front());
    // Prefer a partner other than g^-1, which makes a less informative witness.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& w : elems) {
        if (pass == 0 && w == inv) continue;
        if (key(w) != k0) {
          c.holds = true;
          c.power = n;
          c.g = elems.front();
          c.h = w;
          c.note = what;
          return c;
        }
      }
    }
  }
  c.note = std::string("no witness for ") + what + " among supp mu^{*N}, N <= " + std::to_string(max_power);
  return c;
}

}  // namespace

Certificate non_arithmetic(const MeasureSpec& mu, const WeightScheme& ws, int max_power) {
  return search_distinct(
      mu, max_power, [&](const Word& w) { return translation_length_units(w, ws, Direction::forward); },
      "tau(g) != tau(h)");
}

Certificate asymptotically_asymmetric(const MeasureSpec& mu, const WeightScheme& ws, int max_power) {
  return search_distinct(
      mu, max_power,
      [&](const Word& w) {
        return translation_length_units(w, ws, Direction::forward) -
               translation_length_units(w, ws, Direction::backward);
      },
      "tau(g) - tau(g^-1) != tau(h) - tau(h^-1)");
}

}  // namespace asymwalk
