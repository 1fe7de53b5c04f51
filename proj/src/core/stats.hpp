#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace asymwalk {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

struct Moments {
  std::size_t count = 0;
  double mean = 0;
  double variance = 0;  // unbiased
  double std_error = 0;
};

Moments moments(std::span<const double> xs);

// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> xs, double q);

double normal_cdf(double z) noexcept;

// sup_x |F_n(x) - Phi((x - mean) / sd)|, evaluated on both sides of every jump.
double ks_normal(std::vector<double> xs, double mean, double sd);
// sup_x |F(x) - G(x)| between two empirical distributions.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::size_t count = 0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// One result row: (experiment, n, statistic) -> value with a 95% interval.
struct StatRow {
  std::size_t n = 0;
  std::string statistic;
  std::size_t trials = 0;
  double value = 0;
  double ci_low = 0;
  double ci_high = 0;
};

// Normal-approximation interval mean +- 1.96 se.
StatRow mean_row(std::size_t n, std::string statistic, const Moments& m);
// Wilson score interval for a proportion.
StatRow proportion_row(std::size_t n, std::string statistic, std::size_t hits, std::size_t trials);
StatRow point_row(std::size_t n, std::string statistic, std::size_t trials, double value);

}  // namespace asymwalk
