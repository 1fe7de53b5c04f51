#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "coarse_geometry.hpp"
#include "measure.hpp"
#include "rng.hpp"

namespace asymwalk {

// Seeded sample path. steps[i-1] is the support index of g_i; back_steps[i-1]
// is the support index of g_{-i+1}, so the backward walk uses
// gc_i = g_{-i+1}^-1 and Zc_i = gc_1 ... gc_i (equivalently Z_{-i}).
struct SamplePath {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::vector<std::size_t> steps;
  std::vector<std::size_t> back_steps;
  std::vector<Word> forward;   // Z_0 .. Z_n
  std::vector<Word> backward;  // Zc_0 .. Zc_h
  std::vector<std::int64_t> displacement;          // d(o, Z_i o) in units
  std::vector<std::int64_t> return_displacement;   // d(Z_i o, o) in units

  std::size_t length() const noexcept { return steps.size(); }
  std::size_t backward_length() const noexcept { return back_steps.size(); }
  bool bidirectional() const noexcept { return !back_steps.empty() || backward.size() == 1; }
};

SamplePath sample_path(const MeasureSpec& mu, std::size_t n, std::uint64_t seed, std::uint64_t trial,
                       bool bidirectional, const WeightScheme& ws, std::size_t backward_length = 0);

// Y_i = (Z_{i-M0} o, ..., Z_i o).
std::vector<Word> window(const SamplePath& path, std::size_t i, std::size_t M0);

// Step tuples of S as support indices, for O(log |S|) window lookups.
class SchottkyIndex {
 public:
  SchottkyIndex(const SchottkySet& S, const MeasureSpec& mu);
  std::optional<std::size_t> find(std::span<const std::size_t> steps) const;
  std::size_t M0() const noexcept { return M0_; }

 private:
  std::map<std::vector<std::size_t>, std::size_t> lookup_;
  std::size_t M0_ = 0;
};

// Geodesic chain through the window ending at Z_i.
Segment window_axis(const SamplePath& path, const MeasureSpec& mu, std::size_t i, std::size_t M0);

struct WitnessScan {
  std::vector<std::size_t> indices;  // j(1) < j(2) < ...
  AlignmentReport final_chain;       // (o, Y_j(1), ..., Z_n o) at D0
  std::size_t candidates = 0;        // Schottky windows seen
  std::size_t popped = 0;
};

WitnessScan extract_witnesses(const SamplePath& path, const MeasureSpec& mu, const SchottkySet& S,
                              const WeightScheme& ws);

enum class DeviationStatus { found, horizon_exhausted };

struct DeviationReport {
  std::size_t nu = 0;
  std::size_t nu_check = 0;
  std::size_t horizon = 0;
  std::size_t window = 0;
  std::size_t window_check = 0;
  DeviationStatus status = DeviationStatus::horizon_exhausted;
  DeviationStatus status_check = DeviationStatus::horizon_exhausted;
};

DeviationReport deviation_index(const SamplePath& path, const MeasureSpec& mu, const SchottkySet& S,
                                const WeightScheme& ws, std::size_t horizon);

struct GromovSup {
  double value = 0;
  std::int64_t twice_units = 0;
  std::size_t m = 0;
  std::size_t n = 0;
};

// max over m <= m_max, n <= n_max of (Zc_m o, Z_n o)_o.
GromovSup gromov_deviation(const SamplePath& path, std::size_t m_max, std::size_t n_max, const WeightScheme& ws);

// (Zc_m o, Z_n o)_o <= 1/2 d^sym(o, Z_k o) for all m <= horizon and nu <= n, k <= horizon.
bool gromov_bound_holds(const SamplePath& path, const DeviationReport& r, const WeightScheme& ws);

// CSV: step_index, letter, displacement_forward, displacement_backward.
void write_path_csv(std::ostream& out, const SamplePath& path, const MeasureSpec& mu, const WeightScheme& ws);

// Forward walk that keeps only the current position, for long runs. Draws
// match sample_path on the same (seed, trial).
class StreamingWalk {
 public:
  StreamingWalk(const MeasureSpec& mu, const WeightScheme& ws, std::uint64_t seed, std::uint64_t trial);

  void step();
  void advance_to(std::size_t n);

  std::size_t time() const noexcept { return time_; }
  std::span<const Letter> letters() const noexcept { return stack_; }
  std::int64_t displacement_units() const noexcept { return fwd_.back(); }         // d(o, Z o)
  std::int64_t return_units() const noexcept { return bwd_.back(); }              // d(Z o, o)
  std::int64_t translation_units() const noexcept;                                 // tau(Z)
  std::int64_t inverse_translation_units() const noexcept;                         // tau(Z^-1)
  bool hyperbolic() const noexcept;

  // Weight of letters [i, j) of the current word, forward and reversed.
  std::int64_t forward_units(std::size_t i, std::size_t j) const noexcept { return fwd_[j] - fwd_[i]; }
  std::int64_t backward_units(std::size_t i, std::size_t j) const noexcept { return bwd_[j] - bwd_[i]; }

 private:
  std::size_t conjugator_length() const noexcept;
  void push(Letter l);

  MeasureSpec mu_;
  WeightScheme ws_;
  TrialRng rng_;
  std::size_t time_ = 0;
  std::vector<Letter> stack_;
  std::vector<std::int64_t> fwd_{0};
  std::vector<std::int64_t> bwd_{0};
};

}  // namespace asymwalk
