#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "automorphism.hpp"
#include "stats.hpp"

namespace asymwalk {

// k x k counts: at(i, j) = occurrences of generator i (either sign) in the
// image of generator j.
struct TransitionMatrix {
  int k = 0;
  std::vector<std::int64_t> counts;  // row-major

  static TransitionMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  std::int64_t at(int i, int j) const { return counts[static_cast<std::size_t>(i * k + j)]; }
  std::int64_t column_sum(int j) const;
};

// Every image is a positive word.
bool is_positive(const Automorphism& phi);
TransitionMatrix transition_matrix(const Automorphism& phi);

struct PfResult {
  double value = 0;
  bool primitive = false;
  std::string warning;  // set when the matrix is not primitive
  std::size_t iterations = 0;
};

// Spectral radius of a nonnegative matrix: power iteration on A + I per
// irreducible block until the Collatz-Wielandt bracket is narrower than tol.
PfResult pf_eigenvalue(const TransitionMatrix& M, double tol = 1e-12);

struct GrowthEstimate {
  double lambda = 1;            // primary estimate
  double lambda_log = 1;        // exp((log L_m - log L_0) / m)
  std::vector<double> ratios;   // L_m / L_{m-1}, L = total cyclic length over generators
  std::vector<std::vector<std::size_t>> lengths;  // [generator][m]
  std::size_t iterations = 0;
  bool budget_hit = false;
  bool converged = false;
  bool certified = false;       // irreducibility is never certified

  bool low_confidence() const noexcept { return !converged; }
};

struct GrowthOptions {
  std::size_t budget = 1'000'000;  // cap on any cyclic word length
  double tol = 1e-9;
  std::size_t max_iterations = 200;
};

GrowthEstimate growth_rate(const Automorphism& phi, const GrowthOptions& options = {});

struct GeneratingSet {
  std::vector<Automorphism> elements;
  std::vector<double> probabilities;  // empty: uniform
};

// tau_ab, tau_bc, tau_ca (x -> xy), the cyclic permutation sigma, and inverses.
GeneratingSet default_outer_generators();

struct OuterOptions {
  std::vector<std::size_t> n_list{10, 20, 40};
  std::size_t trials = 300;
  std::vector<double> K{0.05};
  GrowthOptions growth{1'000'000, 1e-3, 200};
  double low_confidence_limit = 0.5;  // fraction above which the run is flagged
  std::uint64_t seed = 1;
};

struct OuterRow {
  std::size_t trial = 0;
  std::size_t n = 0;
  double lambda_fwd = 1;
  double lambda_bwd = 1;
  double delta = 0;
  bool confident = true;
};

struct OuterSummary {
  std::vector<OuterRow> rows;            // sorted by (trial, n)
  std::vector<std::size_t> n_list;
  std::vector<double> K;
  std::vector<std::vector<StatRow>> probability;  // [K][n]: P(|delta| < K)
  std::vector<double> bounded_ratio_q90;          // |delta| / min(log lf, log lb), per n
  double low_confidence_fraction = 0;
  bool flagged = false;
  bool non_increasing = false;  // for K[0]
  bool final_below_initial = false;

  std::vector<StatRow> stat_rows() const;
};

// Z_n = g_1 o ... o g_n; Z_n^-1 is carried along from the supplied inverses.
OuterSummary outer_walk_experiment(const GeneratingSet& gens, const OuterOptions& options);

void write_outer_csv(std::ostream& out, const OuterSummary& summary);

}  // namespace asymwalk
