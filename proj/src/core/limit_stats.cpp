#include "limit_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dp_oracle.hpp"
#include "parallel.hpp"
#include "walk.hpp"

namespace asymwalk {

namespace {

void check_inputs(const MeasureSpec& mu, const WeightScheme& ws, std::size_t trials) {
  if (mu.rank() != ws.rank()) fail(ErrorCode::rank_mismatch, "measure and weights differ in rank");
  if (trials == 0) fail(ErrorCode::invalid_argument, "trials must be positive");
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> ns) {
  if (ns.empty()) fail(ErrorCode::invalid_argument, "n_list is empty");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.front() == 0) fail(ErrorCode::invalid_argument, "n_list entries must be positive");
  return ns;
}

struct Endpoint {
  double d = 0;
  double tau = 0;
  double tau_inv = 0;
  bool hyperbolic = false;
};

// One walk per trial, observed at every n in `ns` (sorted).
std::vector<std::vector<Endpoint>> observe(const MeasureSpec& mu, const WeightScheme& ws,
                                          const std::vector<std::size_t>& ns, std::size_t trials,
                                          std::uint64_t seed) {
  return parallel_map<std::vector<Endpoint>>(trials, [&](std::size_t t) {
    StreamingWalk walk(mu, ws, seed, t);
    std::vector<Endpoint> out;
    out.reserve(ns.size());
    for (std::size_t n : ns) {
      walk.advance_to(n);
      out.push_back({ws.to_real(walk.displacement_units()), ws.to_real(walk.translation_units()),
                     ws.to_real(walk.inverse_translation_units()), walk.hyperbolic()});
    }
    return out;
  });
}

std::vector<double> column(const std::vector<std::vector<Endpoint>>& obs, std::size_t k, double Endpoint::*field) {
  std::vector<double> xs;
  xs.reserve(obs.size());
  for (const auto& o : obs) xs.push_back(o[k].*field);
  return xs;
}

}  // namespace

DriftSummary estimate_drift(const MeasureSpec& mu, std::size_t n, std::size_t trials, const WeightScheme& ws,
                            std::uint64_t seed) {
  check_inputs(mu, ws, trials);
  if (n == 0) fail(ErrorCode::invalid_argument, "n must be positive");
  DriftSummary s;
  s.certificate = non_elementary(mu);
  if (!s.certificate.holds) {
    fail(ErrorCode::degenerate_measure, "measure is not non-elementary: no pair of non-commuting hyperbolic elements");
  }
  const auto obs = observe(mu, ws, {n}, trials, seed);
  std::vector<double> xs = column(obs, 0, &Endpoint::d);
  for (double& x : xs) x /= static_cast<double>(n);
  const Moments m = moments(xs);
  s.n = n;
  s.trials = trials;
  s.lambda_hat = m.mean;
  s.std_error = m.std_error;
  s.ci_low = m.mean - 1.96 * m.std_error;
  s.ci_high = m.mean + 1.96 * m.std_error;
  s.positive = m.mean - 3 * m.std_error > 0;
  return s;
}

std::vector<StatRow> DriftSummary::rows() const {
  return {{n, "drift", trials, lambda_hat, ci_low, ci_high}};
}

CltSummary clt_diagnostics(const MeasureSpec& mu, std::size_t n, std::size_t trials, const WeightScheme& ws,
                           std::uint64_t seed) {
  check_inputs(mu, ws, trials);
  if (trials < 100) fail(ErrorCode::invalid_argument, "CLT diagnostics need at least 100 trials");
  if (n == 0) fail(ErrorCode::invalid_argument, "n must be positive");
  const auto obs = observe(mu, ws, {n}, trials, seed);
  const std::vector<double> d = column(obs, 0, &Endpoint::d);
  const std::vector<double> tau = column(obs, 0, &Endpoint::tau);
  const Moments md = moments(d);
  const Moments mt = moments(tau);
  const double nn = static_cast<double>(n);
  CltSummary s;
  s.n = n;
  s.trials = trials;
  s.lambda_hat = md.mean / nn;
  s.sigma2 = md.variance / nn;
  s.sigma2_tau = mt.variance / nn;
  s.degenerate = !(md.variance > 0);
  if (s.degenerate) {
    s.ks = s.ks_tau = 0;
    s.ks_between = ks_two_sample(d, tau);
    return s;
  }
  const double sd = std::sqrt(md.variance);
  std::vector<double> zd, zt;
  for (double x : d) zd.push_back((x - md.mean) / sd);
  for (double x : tau) zt.push_back((x - md.mean) / sd);
  s.ks = ks_normal(zd, 0, 1);
  s.ks_tau = ks_normal(zt, 0, 1);
  s.ks_between = ks_two_sample(zd, zt);
  return s;
}

std::vector<StatRow> CltSummary::rows() const {
  return {point_row(n, "lambda_hat", trials, lambda_hat), point_row(n, "sigma2", trials, sigma2),
          point_row(n, "sigma2_tau", trials, sigma2_tau), point_row(n, "ks_normal", trials, ks),
          point_row(n, "ks_normal_tau", trials, ks_tau), point_row(n, "ks_d_vs_tau", trials, ks_between),
          point_row(n, "degenerate", trials, degenerate ? 1.0 : 0.0)};
}

LilSummary lil_scan(const MeasureSpec& mu, std::size_t n_max, std::size_t trials, const WeightScheme& ws,
                    std::uint64_t seed) {
  check_inputs(mu, ws, trials);
  if (n_max < 100) fail(ErrorCode::invalid_argument, "LIL scan needs n_max >= 100");
  const double nmax = static_cast<double>(n_max);
  // First pass: centring and scale from the terminal displacement.
  const auto obs = observe(mu, ws, {n_max}, trials, seed);
  const Moments md = moments(column(obs, 0, &Endpoint::d));
  LilSummary s;
  s.n_max = n_max;
  s.trials = trials;
  s.lambda_hat = md.mean / nmax;
  s.sigma_hat = std::sqrt(md.variance / nmax);

  const std::size_t first = 16;
  for (double x = first; x < nmax; x *= 1.2) {
    const auto c = static_cast<std::size_t>(x);
    if (s.checkpoints.empty() || s.checkpoints.back() != c) s.checkpoints.push_back(c);
  }
  s.checkpoints.push_back(n_max);
  const std::size_t decade = std::max(first, n_max / 10);
  const double lambda = s.lambda_hat;

  struct Trace {
    std::vector<double> at_d, at_tau;
    double max_d = -std::numeric_limits<double>::infinity();
    double max_tau = -std::numeric_limits<double>::infinity();
    double gap = 0;
  };
  const auto traces = parallel_map<Trace>(trials, [&](std::size_t t) {
    Trace tr;
    StreamingWalk walk(mu, ws, seed, t);
    std::size_t next = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      walk.step();
      if (n < first) continue;
      const double nd = static_cast<double>(n);
      const double scale = std::sqrt(2 * nd * std::log(std::log(nd)));
      const double sd = (ws.to_real(walk.displacement_units()) - lambda * nd) / scale;
      const double st = (ws.to_real(walk.translation_units()) - lambda * nd) / scale;
      tr.gap = std::max(tr.gap, std::abs(sd - st));
      if (n >= decade) {
        tr.max_d = std::max(tr.max_d, sd);
        tr.max_tau = std::max(tr.max_tau, st);
      }
      if (next < s.checkpoints.size() && s.checkpoints[next] == n) {
        tr.at_d.push_back(sd);
        tr.at_tau.push_back(st);
        ++next;
      }
    }
    return tr;
  });
  s.envelope.assign(s.checkpoints.size(), -std::numeric_limits<double>::infinity());
  s.envelope_tau = s.envelope;
  s.envelope_max = s.envelope_max_tau = -std::numeric_limits<double>::infinity();
  for (const auto& tr : traces) {
    for (std::size_t k = 0; k < s.checkpoints.size(); ++k) {
      s.envelope[k] = std::max(s.envelope[k], tr.at_d[k]);
      s.envelope_tau[k] = std::max(s.envelope_tau[k], tr.at_tau[k]);
    }
    s.envelope_max = std::max(s.envelope_max, tr.max_d);
    s.envelope_max_tau = std::max(s.envelope_max_tau, tr.max_tau);
    s.max_gap = std::max(s.max_gap, tr.gap);
  }
  return s;
}

std::vector<StatRow> LilSummary::rows() const {
  std::vector<StatRow> r;
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    r.push_back(point_row(checkpoints[k], "lil_envelope", trials, envelope[k]));
    r.push_back(point_row(checkpoints[k], "lil_envelope_tau", trials, envelope_tau[k]));
  }
  r.push_back(point_row(n_max, "lil_envelope_max", trials, envelope_max));
  r.push_back(point_row(n_max, "lil_envelope_max_tau", trials, envelope_max_tau));
  r.push_back(point_row(n_max, "sigma_hat", trials, sigma_hat));
  r.push_back(point_row(n_max, "lil_max_gap", trials, max_gap));
  return r;
}

namespace {

// Tail probability P(d <= x n) below the drift and P(d >= x n) above it.
template <class LowerFn, class UpperFn>
RateFunctionProfile build_profile(double lambda, double x_max, std::size_t n1, std::size_t n2, LowerFn lower,
                                  UpperFn upper) {
  RateFunctionProfile prof;
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t cells = static_cast<std::size_t>(std::ceil(x_max / kRateGridStep));
  for (std::size_t i = 0; i <= cells; ++i) {
    const double x = static_cast<double>(i) * kRateGridStep;
    const bool below = x <= lambda;
    const double p1 = below ? lower(n1, x) : upper(n1, x);
    const double p2 = below ? lower(n2, x) : upper(n2, x);
    double rate = inf;
    if (p1 > 0 && p2 > 0) {
      rate = std::max(0.0, -(std::log(p2) - std::log(p1)) / static_cast<double>(n2 - n1));
    }
    prof.grid.push_back(x);
    prof.rate.push_back(rate);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < prof.rate.size(); ++i) {
    if (prof.rate[i] < prof.rate[best]) best = i;
  }
  prof.zero_location = prof.grid[best];
  prof.minimum = prof.rate[best];
  for (std::size_t i = 1; i + 1 < prof.rate.size(); ++i) {
    const double a = prof.rate[i - 1], b = prof.rate[i], c = prof.rate[i + 1];
    if (std::isinf(a) || std::isinf(b) || std::isinf(c)) continue;
    if (a + c - 2 * b < -1e-9) ++prof.convexity_violations;
  }
  return prof;
}

}  // namespace

LdpSummary ldp_tail(const MeasureSpec& mu, double L, std::vector<std::size_t> n_list, std::size_t trials,
                    const WeightScheme& ws, std::uint64_t seed) {
  if (mu.rank() != ws.rank()) fail(ErrorCode::rank_mismatch, "measure and weights differ in rank");
  if (!(L > 0)) fail(ErrorCode::precondition, "LDP threshold L must be positive");
  const std::vector<std::size_t> ns = sorted_unique(std::move(n_list));
  if (ns.size() < 2) fail(ErrorCode::invalid_argument, "LDP fit needs at least two values of n");
  LdpSummary s;
  s.L = L;
  s.n_list = ns;
  const std::size_t n1 = ns[ns.size() - 2];
  const std::size_t n2 = ns.back();
  double x_max = ws.max_weight();

  std::vector<DisplacementLaw> laws;
  if (trials == 0 && mu.nearest_neighbor()) {
    try {
      for (std::size_t n : ns) laws.push_back(displacement_law(mu, n, ws));
      s.exact = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unsupported) throw;
      laws.clear();
    }
  }
  if (s.exact) {
    s.lambda_hat = laws.back().mean() / static_cast<double>(n2);
    if (L >= s.lambda_hat) fail(ErrorCode::precondition, "LDP threshold L must lie below the drift");
    for (std::size_t k = 0; k < ns.size(); ++k) {
      s.log_tail.push_back(std::log(laws[k].lower_tail(L * static_cast<double>(ns[k]))));
    }
    auto law_at = [&](std::size_t n) -> const DisplacementLaw& { return n == n1 ? laws[laws.size() - 2] : laws.back(); };
    s.profile = build_profile(
        s.lambda_hat, x_max, n1, n2,
        [&](std::size_t n, double x) { return law_at(n).lower_tail(x * static_cast<double>(n)); },
        [&](std::size_t n, double x) { return law_at(n).upper_tail(x * static_cast<double>(n)); });
  } else {
    const std::size_t T = trials == 0 ? 10'000 : trials;
    const auto obs = observe(mu, ws, ns, T, seed);
    std::vector<std::vector<double>> ds(ns.size());
    for (std::size_t k = 0; k < ns.size(); ++k) ds[k] = column(obs, k, &Endpoint::d);
    s.lambda_hat = moments(ds.back()).mean / static_cast<double>(n2);
    if (L >= s.lambda_hat) fail(ErrorCode::precondition, "LDP threshold L must lie below the drift");
    const double denom = static_cast<double>(T) + 1;
    auto count = [&](std::size_t k, auto pred) {
      std::size_t c = 0;
      for (double v : ds[k]) c += pred(v) ? 1 : 0;
      return c;
    };
    for (std::size_t k = 0; k < ns.size(); ++k) {
      const double lim = L * static_cast<double>(ns[k]) + 1e-9;
      s.log_tail.push_back(std::log((static_cast<double>(count(k, [&](double v) { return v <= lim; })) + 0.5) / denom));
    }
    const std::size_t k1 = ns.size() - 2, k2 = ns.size() - 1;
    auto kidx = [&](std::size_t n) { return n == n1 ? k1 : k2; };
    s.profile = build_profile(
        s.lambda_hat, x_max, n1, n2,
        [&](std::size_t n, double x) {
          const double lim = x * static_cast<double>(n) + 1e-9;
          return static_cast<double>(count(kidx(n), [&](double v) { return v <= lim; })) / static_cast<double>(T);
        },
        [&](std::size_t n, double x) {
          const double lim = x * static_cast<double>(n) - 1e-9;
          return static_cast<double>(count(kidx(n), [&](double v) { return v >= lim; })) / static_cast<double>(T);
        });
  }
  std::vector<double> xs(ns.begin(), ns.end());
  s.fit = linear_fit(xs, s.log_tail);
  return s;
}

std::vector<StatRow> LdpSummary::rows() const {
  std::vector<StatRow> r;
  for (std::size_t k = 0; k < n_list.size(); ++k) r.push_back(point_row(n_list[k], "log_tail", 0, log_tail[k]));
  const std::size_t n = n_list.back();
  r.push_back(point_row(n, "tail_slope", 0, fit.slope));
  r.push_back(point_row(n, "tail_intercept", 0, fit.intercept));
  r.push_back(point_row(n, "tail_r2", 0, fit.r2));
  r.push_back(point_row(n, "rate_zero_location", 0, profile.zero_location));
  r.push_back(point_row(n, "rate_minimum", 0, profile.minimum));
  r.push_back(point_row(n, "rate_convexity_violations", 0, static_cast<double>(profile.convexity_violations)));
  return r;
}

DiscrepancySummary discrepancy_scan(const MeasureSpec& mu, std::vector<std::size_t> n_list, std::size_t trials,
                                    double p, const WeightScheme& ws, std::uint64_t seed) {
  check_inputs(mu, ws, trials);
  if (!(p > 0)) fail(ErrorCode::invalid_argument, "exponent p must be positive");
  const std::vector<std::size_t> ns = sorted_unique(std::move(n_list));
  const auto obs = observe(mu, ws, ns, trials, seed);
  DiscrepancySummary s;
  s.p = p;
  s.trials = trials;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double scale = std::pow(static_cast<double>(ns[k]), 1.0 / p);
    std::vector<double> xs;
    for (const auto& o : obs) xs.push_back((o[k].d - o[k].tau) / scale);
    QuantileRow q;
    q.n = ns[k];
    q.q50 = quantile(xs, 0.5);
    q.q90 = quantile(xs, 0.9);
    q.q99 = quantile(xs, 0.99);
    q.max = *std::max_element(xs.begin(), xs.end());
    q.mean = moments(xs).mean;
    s.per_n.push_back(q);
  }
  s.q99_decreasing = true;
  for (std::size_t k = 1; k < s.per_n.size(); ++k) {
    if (!(s.per_n[k].q99 < s.per_n[k - 1].q99) && s.per_n[k - 1].q99 > 0) s.q99_decreasing = false;
  }
  return s;
}

std::vector<StatRow> DiscrepancySummary::rows() const {
  std::vector<StatRow> r;
  for (const auto& q : per_n) {
    r.push_back(point_row(q.n, "discrepancy_q50", trials, q.q50));
    r.push_back(point_row(q.n, "discrepancy_q90", trials, q.q90));
    r.push_back(point_row(q.n, "discrepancy_q99", trials, q.q99));
    r.push_back(point_row(q.n, "discrepancy_max", trials, q.max));
    r.push_back(point_row(q.n, "discrepancy_mean", trials, q.mean));
  }
  return r;
}

GenericitySummary genericity_scan(const MeasureSpec& mu, double L, std::vector<std::size_t> n_list,
                                  std::size_t trials, const WeightScheme& ws, std::uint64_t seed) {
  check_inputs(mu, ws, trials);
  if (!(L > 0)) fail(ErrorCode::precondition, "genericity threshold L must be positive");
  const std::vector<std::size_t> ns = sorted_unique(std::move(n_list));
  const auto obs = observe(mu, ws, ns, trials, seed);
  GenericitySummary s;
  s.L = L;
  s.trials = trials;
  s.n_list = ns;
  s.lambda_hat = moments(column(obs, ns.size() - 1, &Endpoint::d)).mean / static_cast<double>(ns.back());
  if (L >= s.lambda_hat) fail(ErrorCode::precondition, "genericity threshold L must lie below the drift");
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double lim = L * static_cast<double>(ns[k]) - 1e-9;
    std::size_t hits = 0;
    for (const auto& o : obs) hits += (o[k].hyperbolic && o[k].tau >= lim) ? 1 : 0;
    s.hits.push_back(hits);
    s.fraction.push_back(static_cast<double>(hits) / static_cast<double>(trials));
    s.log_failure.push_back(std::log((static_cast<double>(trials - hits) + 0.5) / (static_cast<double>(trials) + 1)));
  }
  s.decreasing = true;
  for (std::size_t k = 1; k < ns.size(); ++k) {
    if (!(s.log_failure[k] < s.log_failure[k - 1])) s.decreasing = false;
  }
  if (ns.size() >= 2) {
    std::vector<double> xs(ns.begin(), ns.end());
    s.slope = linear_fit(xs, s.log_failure).slope;
  }
  return s;
}

std::vector<StatRow> GenericitySummary::rows() const {
  std::vector<StatRow> r;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    r.push_back(proportion_row(n_list[k], "generic_fraction", hits[k], trials));
    r.push_back(point_row(n_list[k], "log_failure", trials, log_failure[k]));
  }
  r.push_back(point_row(n_list.back(), "log_failure_slope", trials, slope));
  return r;
}

TrackingSummary tracking_scan(const MeasureSpec& mu, std::size_t n, std::size_t trials, double p,
                              const WeightScheme& ws, std::uint64_t seed) {
  check_inputs(mu, ws, trials);
  if (!(p > 0)) fail(ErrorCode::invalid_argument, "exponent p must be positive");
  if (n == 0) fail(ErrorCode::invalid_argument, "n must be positive");
  const double scale = std::pow(static_cast<double>(n), 1.0 / (2 * p));
  TrackingSummary s;
  s.n = n;
  s.p = p;
  s.trials = trials;
  s.scaled = parallel_map<double>(trials, [&](std::size_t t) {
    StreamingWalk ahead(mu, ws, seed, t);
    ahead.advance_to(n);
    const std::vector<Letter> target(ahead.letters().begin(), ahead.letters().end());
    // Replay the same path; the projection of Z_k onto [o, Z_n] is the branch
    // point after the common prefix.
    StreamingWalk walk(mu, ws, seed, t);
    std::size_t lcp = 0;
    std::int64_t worst = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      walk.step();
      const auto cur = walk.letters();
      lcp = std::min(lcp, cur.size());
      while (lcp < cur.size() && lcp < target.size() && cur[lcp] == target[lcp]) ++lcp;
      worst = std::max(worst, walk.forward_units(lcp, cur.size()) + walk.backward_units(lcp, cur.size()));
    }
    return ws.to_real(worst) / scale;
  });
  s.median = quantile(s.scaled, 0.5);
  s.q90 = quantile(s.scaled, 0.9);
  s.max = *std::max_element(s.scaled.begin(), s.scaled.end());
  return s;
}

std::vector<StatRow> TrackingSummary::rows() const {
  return {point_row(n, "tracking_median", trials, median), point_row(n, "tracking_q90", trials, q90),
          point_row(n, "tracking_max", trials, max)};
}

AsymmetrySummary asymmetry_test(const MeasureSpec& mu, double K, std::vector<std::size_t> n_list,
                                std::size_t trials, const WeightScheme& ws, std::uint64_t seed) {
  check_inputs(mu, ws, trials);
  if (!(K > 0)) fail(ErrorCode::invalid_argument, "K must be positive");
  AsymmetrySummary s;
  s.certificate = asymptotically_asymmetric(mu, ws);
  if (!s.certificate.holds) {
    fail(ErrorCode::precondition,
         "measure is not asymptotically asymmetric: tau(g) - tau(g^-1) is constant on the sampled supports (" +
             s.certificate.note + ")");
  }
  const std::vector<std::size_t> ns = sorted_unique(std::move(n_list));
  const auto obs = observe(mu, ws, ns, trials, seed);
  s.K = K;
  s.trials = trials;
  s.n_list = ns;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    std::size_t hits = 0;
    for (const auto& o : obs) hits += std::abs(o[k].tau - o[k].tau_inv) < K ? 1 : 0;
    s.probability.push_back(proportion_row(ns[k], "asymmetry_probability", hits, trials));
  }
  s.strictly_decreasing = true;
  for (std::size_t k = 1; k < ns.size(); ++k) {
    if (!(s.probability[k].value < s.probability[k - 1].value)) s.strictly_decreasing = false;
  }
  s.halved = s.probability.back().value < 0.5 * s.probability.front().value;
  return s;
}

std::vector<StatRow> AsymmetrySummary::rows() const { return probability; }

}  // namespace asymwalk
