#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace asymwalk {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

Moments moments(std::span<const double> xs) {
  Moments m;
  m.count = xs.size();
  if (xs.empty()) return m;
  CompensatedSum s;
  for (double x : xs) s.add(x);
  m.mean = s.value() / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    CompensatedSum v;
    for (double x : xs) v.add((x - m.mean) * (x - m.mean));
    m.variance = v.value() / static_cast<double>(xs.size() - 1);
    m.std_error = std::sqrt(m.variance / static_cast<double>(xs.size()));
  }
  return m;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) fail(ErrorCode::invalid_argument, "quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double h = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_normal(std::vector<double> xs, double mean, double sd) {
  if (xs.empty() || !(sd > 0)) return 1.0;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double phi = normal_cdf((xs[i] - mean) / sd);
    d = std::max({d, std::abs(phi - static_cast<double>(i) / n), std::abs(static_cast<double>(j) / n - phi)});
    i = j;
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) return 1.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j >= b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                             static_cast<double>(j) / static_cast<double>(b.size())));
  }
  return d;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorCode::invalid_argument, "linear fit needs two or more points");
  LinearFit f;
  f.count = x.size();
  const Moments mx = moments(x);
  const Moments my = moments(y);
  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy.add((x[i] - mx.mean) * (y[i] - my.mean));
    sxx.add((x[i] - mx.mean) * (x[i] - mx.mean));
    syy.add((y[i] - my.mean) * (y[i] - my.mean));
  }
  if (sxx.value() == 0) fail(ErrorCode::invalid_argument, "linear fit with constant abscissa");
  f.slope = sxy.value() / sxx.value();
  f.intercept = my.mean - f.slope * mx.mean;
  f.r2 = syy.value() == 0 ? 1.0 : (sxy.value() * sxy.value()) / (sxx.value() * syy.value());
  return f;
}

StatRow mean_row(std::size_t n, std::string statistic, const Moments& m) {
  return {n, std::move(statistic), m.count, m.mean, m.mean - 1.96 * m.std_error, m.mean + 1.96 * m.std_error};
}

StatRow proportion_row(std::size_t n, std::string statistic, std::size_t hits, std::size_t trials) {
  StatRow r{n, std::move(statistic), trials, 0, 0, 0};
  if (trials == 0) return r;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / t;
  const double z = 1.96;
  const double denom = 1 + z * z / t;
  const double centre = (p + z * z / (2 * t)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / t + z * z / (4 * t * t)) / denom;
  r.value = p;
  r.ci_low = std::max(0.0, centre - half);
  r.ci_high = std::min(1.0, centre + half);
  return r;
}

StatRow point_row(std::size_t n, std::string statistic, std::size_t trials, double value) {
  return {n, std::move(statistic), trials, value, value, value};
}

}  // namespace asymwalk
