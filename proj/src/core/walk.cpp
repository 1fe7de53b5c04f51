#include "walk.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "rng.hpp"

namespace asymwalk {

SamplePath sample_path(const MeasureSpec& mu, std::size_t n, std::uint64_t seed, std::uint64_t trial,
                       bool bidirectional, const WeightScheme& ws, std::size_t backward_length) {
  if (mu.rank() != ws.rank()) fail(ErrorCode::rank_mismatch, "measure and weights differ in rank");
  SamplePath p;
  p.seed = seed;
  p.trial = trial;
  const TrialRng fwd(seed, trial, Stream::forward);
  WordBuilder z(mu.rank());
  p.forward.reserve(n + 1);
  p.forward.push_back(Word(mu.rank()));
  p.displacement.push_back(0);
  p.return_displacement.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = mu.draw(fwd.uniform(i));
    p.steps.push_back(s);
    z.append(mu.element(s));
    WordBuilder copy = z;
    p.forward.push_back(std::move(copy).build());
    p.displacement.push_back(ws.word_units(p.forward.back()));
    p.return_displacement.push_back(ws.reverse_units(p.forward.back()));
  }
  p.backward.push_back(Word(mu.rank()));
  if (bidirectional) {
    const std::size_t h = backward_length == 0 ? n : backward_length;
    const TrialRng bwd(seed, trial, Stream::backward);
    WordBuilder zc(mu.rank());
    for (std::size_t i = 0; i < h; ++i) {
      const std::size_t s = mu.draw(bwd.uniform(i));
      p.back_steps.push_back(s);
      zc.append_inverse(mu.element(s));
      WordBuilder copy = zc;
      p.backward.push_back(std::move(copy).build());
    }
  }
  return p;
}

std::vector<Word> window(const SamplePath& path, std::size_t i, std::size_t M0) {
  if (i < M0 || i > path.length()) {
    fail(ErrorCode::out_of_range, "window index " + std::to_string(i) + " outside [" + std::to_string(M0) +
                                      ", " + std::to_string(path.length()) + "]");
  }
  return {path.forward.begin() + static_cast<std::ptrdiff_t>(i - M0),
          path.forward.begin() + static_cast<std::ptrdiff_t>(i + 1)};
}

SchottkyIndex::SchottkyIndex(const SchottkySet& S, const MeasureSpec& mu) : M0_(S.M0) {
  for (std::size_t a = 0; a < S.sequences.size(); ++a) {
    std::vector<std::size_t> key;
    for (const auto& w : S.sequences[a]) {
      const auto& sup = mu.support();
      const auto it = std::find(sup.begin(), sup.end(), w);
      if (it == sup.end()) break;
      key.push_back(static_cast<std::size_t>(it - sup.begin()));
    }
    if (key.size() == S.sequences[a].size()) lookup_.emplace(std::move(key), a);
  }
}

std::optional<std::size_t> SchottkyIndex::find(std::span<const std::size_t> steps) const {
  const auto it = lookup_.find(std::vector<std::size_t>(steps.begin(), steps.end()));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Segment window_axis(const SamplePath& path, const MeasureSpec& mu, std::size_t i, std::size_t M0) {
  if (i < M0 || i > path.length()) fail(ErrorCode::out_of_range, "window index out of range");
  WordBuilder b(mu.rank());
  for (std::size_t j = i - M0; j < i; ++j) b.append(mu.element(path.steps[j]));
  return Segment(path.forward[i - M0], std::move(b).build());
}

namespace {

// Reversed backward window from Zc_i to Zc_{i-M0}; its steps are g_{-i+1} ... g_{-i+M0}.
Segment backward_window_axis(const SamplePath& path, const MeasureSpec& mu, std::size_t i, std::size_t M0) {
  WordBuilder b(mu.rank());
  for (std::size_t j = i; j > i - M0; --j) b.append(mu.element(path.back_steps[j - 1]));
  return Segment(path.backward[i], std::move(b).build());
}

std::vector<std::size_t> backward_tuple(const SamplePath& path, std::size_t i, std::size_t M0) {
  std::vector<std::size_t> t;
  for (std::size_t j = i; j > i - M0; --j) t.push_back(path.back_steps[j - 1]);
  return t;
}

}  // namespace

WitnessScan extract_witnesses(const SamplePath& path, const MeasureSpec& mu, const SchottkySet& S,
                              const WeightScheme& ws) {
  if (!S.calibrated) fail(ErrorCode::precondition, "Schottky set is not calibrated");
  const std::size_t M0 = S.M0;
  const SchottkyIndex index(S, mu);
  const Segment origin = Segment::point(Word(mu.rank()));
  WitnessScan scan;
  std::vector<std::pair<std::size_t, Segment>> chain;

  for (std::size_t i = M0; i <= path.length(); i += M0) {
    std::span<const std::size_t> tuple(path.steps.data() + (i - M0), M0);
    if (!index.find(tuple)) continue;
    ++scan.candidates;
    Segment y = window_axis(path, mu, i, M0);
    // Deepest accepted witness that the new window aligns with; later ones are dropped.
    std::size_t keep = chain.size() + 1;
    for (std::size_t k = chain.size(); k > 0; --k) {
      if (pair_aligned(chain[k - 1].second, y, S.D0, ws)) {
        keep = k;
        break;
      }
    }
    if (keep > chain.size()) {
      if (!pair_aligned(origin, y, S.D0, ws)) continue;
      keep = 0;
    }
    scan.popped += chain.size() - keep;
    chain.resize(keep);
    chain.emplace_back(i, std::move(y));
  }
  const Segment terminal = Segment::point(path.forward.back());
  while (!chain.empty() && !pair_aligned(chain.back().second, terminal, S.D0, ws)) {
    chain.pop_back();
    ++scan.popped;
  }
  std::vector<Segment> full{origin};
  for (auto& [i, seg] : chain) {
    scan.indices.push_back(i);
    full.push_back(seg);
  }
  full.push_back(terminal);
  scan.final_chain = check_aligned(full, S.D0, ws);
  return scan;
}

namespace {

struct SideResult {
  std::size_t index = 0;
  std::size_t window = 0;
  bool found = false;
};

// Minimal index D <= horizon with a window i <= D such that every `near`
// point is aligned before the window and every `far` point with index in
// [D, horizon] is aligned after it.
template <class WindowFn, class TupleFn>
SideResult minimal_index(std::size_t M0, std::size_t horizon, const SchottkyIndex& index,
                         const std::vector<Word>& near, const std::vector<Word>& far, WindowFn window_at,
                         TupleFn tuple_at, double D0, const WeightScheme& ws) {
  SideResult best;
  std::size_t best_value = horizon + 1;
  for (std::size_t i = M0; i <= horizon && i < best_value; ++i) {
    if (!index.find(tuple_at(i))) continue;
    const Segment y = window_at(i);
    bool near_ok = true;
    for (std::size_t m = 0; m <= horizon && near_ok; ++m) {
      near_ok = pair_aligned(Segment::point(near[m]), y, D0, ws);
    }
    if (!near_ok) continue;
    std::size_t value = i;
    for (std::size_t n = horizon; n >= i; --n) {
      if (!pair_aligned(y, Segment::point(far[n]), D0, ws)) {
        value = n + 1;
        break;
      }
      if (n == 0) break;
    }
    if (value < best_value) {
      best_value = value;
      best.index = value;
      best.window = i;
      best.found = true;
    }
  }
  return best;
}

}  // namespace

DeviationReport deviation_index(const SamplePath& path, const MeasureSpec& mu, const SchottkySet& S,
                                const WeightScheme& ws, std::size_t horizon) {
  if (!S.calibrated) fail(ErrorCode::precondition, "Schottky set is not calibrated");
  if (horizon > path.length() || horizon > path.backward_length()) {
    fail(ErrorCode::out_of_range, "horizon " + std::to_string(horizon) + " exceeds the path length");
  }
  DeviationReport r;
  r.horizon = horizon;
  const std::size_t M0 = S.M0;
  if (horizon < M0) return r;
  const SchottkyIndex index(S, mu);

  const SideResult fwd = minimal_index(
      M0, horizon, index, path.backward, path.forward,
      [&](std::size_t i) { return window_axis(path, mu, i, M0); },
      [&](std::size_t i) {
        return std::vector<std::size_t>(path.steps.begin() + static_cast<std::ptrdiff_t>(i - M0),
                                        path.steps.begin() + static_cast<std::ptrdiff_t>(i));
      },
      S.D0, ws);
  if (fwd.found) {
    r.status = DeviationStatus::found;
    r.nu = fwd.index;
    r.window = fwd.window;
  }

  // Backward index: the reversed backward window sits between the forward
  // points (near side, after reversal of roles) and the backward points.
  SideResult bwd;
  {
    std::size_t best_value = horizon + 1;
    for (std::size_t i = M0; i <= horizon && i < best_value; ++i) {
      const auto t = backward_tuple(path, i, M0);
      if (!index.find(t)) continue;
      const Segment y = backward_window_axis(path, mu, i, M0);
      bool far_ok = true;
      for (std::size_t m = 0; m <= horizon && far_ok; ++m) {
        far_ok = pair_aligned(y, Segment::point(path.forward[m]), S.D0, ws);
      }
      if (!far_ok) continue;
      std::size_t value = i;
      for (std::size_t n = horizon; n >= i; --n) {
        if (!pair_aligned(Segment::point(path.backward[n]), y, S.D0, ws)) {
          value = n + 1;
          break;
        }
      }
      if (value < best_value) {
        best_value = value;
        bwd.index = value;
        bwd.window = i;
        bwd.found = true;
      }
    }
  }
  if (bwd.found) {
    r.status_check = DeviationStatus::found;
    r.nu_check = bwd.index;
    r.window_check = bwd.window;
  }
  return r;
}

GromovSup gromov_deviation(const SamplePath& path, std::size_t m_max, std::size_t n_max, const WeightScheme& ws) {
  if (m_max > path.backward_length() || n_max > path.length()) {
    fail(ErrorCode::out_of_range, "gromov_deviation grid exceeds the path");
  }
  GromovSup g;
  const Word o(ws.rank());
  for (std::size_t m = 0; m <= m_max; ++m) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      const std::int64_t t = gromov_product_twice_units(path.backward[m], path.forward[n], o, ws);
      if (t > g.twice_units) {
        g.twice_units = t;
        g.m = m;
        g.n = n;
      }
    }
  }
  g.value = 0.5 * ws.to_real(g.twice_units);
  return g;
}

bool gromov_bound_holds(const SamplePath& path, const DeviationReport& r, const WeightScheme& ws) {
  if (r.status != DeviationStatus::found) return true;
  const Word o(ws.rank());
  std::int64_t lhs = 0;
  for (std::size_t m = 0; m <= r.horizon; ++m) {
    for (std::size_t n = r.nu; n <= r.horizon; ++n) {
      lhs = std::max(lhs, gromov_product_twice_units(path.backward[m], path.forward[n], o, ws));
    }
  }
  for (std::size_t k = r.nu; k <= r.horizon; ++k) {
    if (lhs > path.displacement[k] + path.return_displacement[k]) return false;
  }
  return true;
}

void write_path_csv(std::ostream& out, const SamplePath& path, const MeasureSpec& mu, const WeightScheme& ws) {
  out << "step_index,letter,displacement_forward,displacement_backward\n";
  char buf[64];
  for (std::size_t i = 0; i <= path.length(); ++i) {
    out << i << ',' << (i == 0 ? std::string() : mu.element(path.steps[i - 1]).str()) << ',';
    std::snprintf(buf, sizeof buf, "%.12g", ws.to_real(path.displacement[i]));
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12g", ws.to_real(path.return_displacement[i]));
    out << buf << '\n';
  }
}

StreamingWalk::StreamingWalk(const MeasureSpec& mu, const WeightScheme& ws, std::uint64_t seed, std::uint64_t trial)
    : mu_(mu), ws_(ws), rng_(seed, trial, Stream::forward) {
  if (mu.rank() != ws.rank()) fail(ErrorCode::rank_mismatch, "measure and weights differ in rank");
}

void StreamingWalk::push(Letter l) {
  if (!stack_.empty() && stack_.back() == inverse(l)) {
    stack_.pop_back();
    fwd_.pop_back();
    bwd_.pop_back();
    return;
  }
  stack_.push_back(l);
  fwd_.push_back(fwd_.back() + ws_.units(l));
  bwd_.push_back(bwd_.back() + ws_.units(inverse(l)));
}

void StreamingWalk::step() {
  const Word& g = mu_.element(mu_.draw(rng_.uniform(time_)));
  for (Letter l : g.letters()) push(l);
  ++time_;
}

void StreamingWalk::advance_to(std::size_t n) {
  while (time_ < n) step();
}

std::size_t StreamingWalk::conjugator_length() const noexcept {
  const std::size_t len = stack_.size();
  std::size_t c = 0;
  while (2 * c + 1 < len && stack_[c] == inverse(stack_[len - 1 - c])) ++c;
  return c;
}

std::int64_t StreamingWalk::translation_units() const noexcept {
  const std::size_t c = conjugator_length();
  return forward_units(c, stack_.size() - c);
}

std::int64_t StreamingWalk::inverse_translation_units() const noexcept {
  const std::size_t c = conjugator_length();
  return backward_units(c, stack_.size() - c);
}

bool StreamingWalk::hyperbolic() const noexcept { return !stack_.empty(); }

}  // namespace asymwalk
