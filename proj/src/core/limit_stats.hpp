#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "measure.hpp"
#include "stats.hpp"

namespace asymwalk {

struct DriftSummary {
  std::size_t n = 0;
  std::size_t trials = 0;
  double lambda_hat = 0;
  double ci_low = 0;
  double ci_high = 0;
  double std_error = 0;  // of lambda_hat
  bool positive = false;  // lambda_hat - 3 se > 0
  Certificate certificate;

  std::vector<StatRow> rows() const;
};

DriftSummary estimate_drift(const MeasureSpec& mu, std::size_t n, std::size_t trials, const WeightScheme& ws,
                            std::uint64_t seed);

struct CltSummary {
  std::size_t n = 0;
  std::size_t trials = 0;
  double lambda_hat = 0;
  double sigma2 = 0;      // Var d / n
  double sigma2_tau = 0;  // Var tau / n
  double ks = 0;          // normalized d against N(0, 1)
  double ks_tau = 0;      // normalized tau against N(0, 1)
  double ks_between = 0;  // normalized d against normalized tau
  bool degenerate = false;

  std::vector<StatRow> rows() const;
};

// Both statistics are centred at lambda_hat n and scaled by sqrt(sigma2 n).
CltSummary clt_diagnostics(const MeasureSpec& mu, std::size_t n, std::size_t trials, const WeightScheme& ws,
                           std::uint64_t seed);

struct LilSummary {
  std::size_t n_max = 0;
  std::size_t trials = 0;
  double lambda_hat = 0;
  double sigma_hat = 0;
  std::vector<std::size_t> checkpoints;
  std::vector<double> envelope;      // max over trials at each checkpoint
  std::vector<double> envelope_tau;
  double envelope_max = 0;           // max over trials of the max over n in [n_max/10, n_max]
  double envelope_max_tau = 0;
  double max_gap = 0;                // max |S_d - S_tau| over all trials and n

  std::vector<StatRow> rows() const;
};

// S_n = (d(o, Z_n o) - lambda_hat n) / sqrt(2 n log log n), n >= 16.
LilSummary lil_scan(const MeasureSpec& mu, std::size_t n_max, std::size_t trials, const WeightScheme& ws,
                    std::uint64_t seed);

struct RateFunctionProfile {
  std::vector<double> grid;
  std::vector<double> rate;  // +inf where the tail is empty
  double zero_location = 0;  // grid argmin
  double minimum = 0;
  std::size_t convexity_violations = 0;
};

struct LdpSummary {
  double L = 0;
  double lambda_hat = 0;
  bool exact = false;
  std::vector<std::size_t> n_list;
  std::vector<double> log_tail;  // log P(d <= L n)
  LinearFit fit;
  RateFunctionProfile profile;

  std::vector<StatRow> rows() const;
};

inline constexpr double kRateGridStep = 0.02;

// trials == 0 requests exact probabilities; Monte Carlo is used when the exact
// law is unavailable.
LdpSummary ldp_tail(const MeasureSpec& mu, double L, std::vector<std::size_t> n_list, std::size_t trials,
                    const WeightScheme& ws, std::uint64_t seed);

struct QuantileRow {
  std::size_t n = 0;
  double q50 = 0;
  double q90 = 0;
  double q99 = 0;
  double max = 0;
  double mean = 0;
};

struct DiscrepancySummary {
  double p = 1;
  std::size_t trials = 0;
  std::vector<QuantileRow> per_n;  // of (d - tau) / n^(1/p)
  bool q99_decreasing = false;

  std::vector<StatRow> rows() const;
};

DiscrepancySummary discrepancy_scan(const MeasureSpec& mu, std::vector<std::size_t> n_list, std::size_t trials,
                                    double p, const WeightScheme& ws, std::uint64_t seed);

struct GenericitySummary {
  double L = 0;
  double lambda_hat = 0;
  std::size_t trials = 0;
  std::vector<std::size_t> n_list;
  std::vector<std::size_t> hits;
  std::vector<double> fraction;
  std::vector<double> log_failure;  // log((fail + 1/2) / (trials + 1))
  double slope = 0;
  bool decreasing = false;

  std::vector<StatRow> rows() const;
};

GenericitySummary genericity_scan(const MeasureSpec& mu, double L, std::vector<std::size_t> n_list,
                                  std::size_t trials, const WeightScheme& ws, std::uint64_t seed);

struct TrackingSummary {
  std::size_t n = 0;
  double p = 1;
  std::size_t trials = 0;
  std::vector<double> scaled;  // per trial, max_k d^sym(Z_k o, [o, Z_n o]) / n^(1/2p)
  double median = 0;
  double q90 = 0;
  double max = 0;

  std::vector<StatRow> rows() const;
};

TrackingSummary tracking_scan(const MeasureSpec& mu, std::size_t n, std::size_t trials, double p,
                              const WeightScheme& ws, std::uint64_t seed);

struct AsymmetrySummary {
  double K = 0;
  std::size_t trials = 0;
  Certificate certificate;
  std::vector<std::size_t> n_list;
  std::vector<StatRow> probability;  // P(|tau(Z_n) - tau(Z_n^-1)| < K)
  bool strictly_decreasing = false;
  bool halved = false;  // last <= first / 2

  std::vector<StatRow> rows() const;
};

AsymmetrySummary asymmetry_test(const MeasureSpec& mu, double K, std::vector<std::size_t> n_list,
                                std::size_t trials, const WeightScheme& ws, std::uint64_t seed);

}  // namespace asymwalk
