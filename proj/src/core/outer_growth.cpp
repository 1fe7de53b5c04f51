#include "outer_growth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>

#include "parallel.hpp"
#include "rng.hpp"

namespace asymwalk {

TransitionMatrix TransitionMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  TransitionMatrix M;
  M.k = static_cast<int>(rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.size()) fail(ErrorCode::invalid_argument, "transition matrix must be square");
    for (auto v : r) {
      if (v < 0) fail(ErrorCode::invalid_argument, "transition matrix entries must be nonnegative");
      M.counts.push_back(v);
    }
  }
  return M;
}

std::int64_t TransitionMatrix::column_sum(int j) const {
  std::int64_t s = 0;
  for (int i = 0; i < k; ++i) s += at(i, j);
  return s;
}

bool is_positive(const Automorphism& phi) {
  for (const auto& w : phi.images()) {
    for (Letter l : w.letters()) {
      if (l < 0) return false;
    }
  }
  return true;
}

TransitionMatrix transition_matrix(const Automorphism& phi) {
  TransitionMatrix M;
  M.k = phi.rank();
  M.counts.assign(static_cast<std::size_t>(M.k * M.k), 0);
  for (int j = 0; j < M.k; ++j) {
    for (Letter l : phi.images()[static_cast<std::size_t>(j)].letters()) {
      const int i = std::abs(l) - 1;
      ++M.counts[static_cast<std::size_t>(i * M.k + j)];
    }
  }
  return M;
}

namespace {

bool is_primitive(const TransitionMatrix& M) {
  const auto k = static_cast<std::size_t>(M.k);
  std::vector<char> A(k * k), P(k * k), Q(k * k);
  for (std::size_t i = 0; i < k * k; ++i) A[i] = P[i] = M.counts[i] > 0;
  const std::size_t power = (k - 1) * (k - 1) + 1;
  for (std::size_t t = 1; t < power; ++t) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        char v = 0;
        for (std::size_t m = 0; m < k && !v; ++m) v = static_cast<char>(P[i * k + m] && A[m * k + j]);
        Q[i * k + j] = v;
      }
    }
    std::swap(P, Q);
  }
  return std::all_of(P.begin(), P.end(), [](char c) { return c != 0; });
}

}  // namespace

PfResult pf_eigenvalue(const TransitionMatrix& M, double tol) {
  const auto k = static_cast<std::size_t>(M.k);
  if (k == 0 || std::all_of(M.counts.begin(), M.counts.end(), [](std::int64_t v) { return v == 0; })) {
    fail(ErrorCode::invalid_argument, "zero matrix has no Perron-Frobenius eigenvalue");
  }
  PfResult r;
  r.primitive = is_primitive(M);
  if (!r.primitive) r.warning = "matrix is not primitive; maximum over irreducible blocks reported";

  // Strongly connected components from transitive closure.
  std::vector<char> reach(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    reach[i * k + i] = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (M.counts[i * k + j] > 0) reach[i * k + j] = 1;
    }
  }
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (reach[i * k + m] && reach[m * k + j]) reach[i * k + j] = 1;
      }
    }
  }
  std::vector<int> comp(k, -1);
  double best = 0;
  for (std::size_t root = 0; root < k; ++root) {
    if (comp[root] >= 0) continue;
    std::vector<std::size_t> block;
    for (std::size_t j = 0; j < k; ++j) {
      if (reach[root * k + j] && reach[j * k + root]) {
        comp[j] = static_cast<int>(root);
        block.push_back(j);
      }
    }
    const std::size_t s = block.size();
    if (s == 1) {
      best = std::max(best, static_cast<double>(M.counts[block[0] * k + block[0]]));
      continue;
    }
    std::vector<double> x(s, 1.0), y(s);
    double value = 0;
    for (std::size_t it = 0; it < 1'000'000; ++it) {
      ++r.iterations;
      double lo = INFINITY, hi = 0, top = 0;
      for (std::size_t a = 0; a < s; ++a) {
        double v = x[a];
        for (std::size_t b = 0; b < s; ++b) v += static_cast<double>(M.counts[block[a] * k + block[b]]) * x[b];
        y[a] = v;
        lo = std::min(lo, v / x[a]);
        hi = std::max(hi, v / x[a]);
        top = std::max(top, v);
      }
      for (std::size_t a = 0; a < s; ++a) x[a] = y[a] / top;
      value = 0.5 * (lo + hi) - 1;
      if (hi - lo <= tol * std::max(1.0, hi)) break;
    }
    best = std::max(best, value);
  }
  r.value = best;
  return r;
}

namespace {
constexpr std::size_t kStableWindow = 6;
}  // namespace

GrowthEstimate growth_rate(const Automorphism& phi, const GrowthOptions& options) {
  const int k = phi.rank();
  GrowthEstimate g;
  std::vector<Word> words;
  std::vector<std::size_t> image_len;
  for (int x = 1; x <= k; ++x) {
    words.push_back(Word::generator(k, x));
    image_len.push_back(phi.images()[static_cast<std::size_t>(x - 1)].size());
  }
  g.lengths.assign(static_cast<std::size_t>(k), {1});
  std::vector<double> totals{static_cast<double>(k)};

  for (std::size_t m = 1; m <= options.max_iterations; ++m) {
    bool over = false;
    for (const auto& w : words) {
      std::size_t predicted = 0;
      for (Letter l : w.letters()) predicted += image_len[static_cast<std::size_t>(std::abs(l) - 1)];
      if (predicted > options.budget) over = true;
    }
    if (over) {
      g.budget_hit = true;
      break;
    }
    double total = 0;
    for (std::size_t x = 0; x < words.size(); ++x) {
      words[x] = phi.apply_cyclic(words[x], options.budget);
      g.lengths[x].push_back(words[x].size());
      total += static_cast<double>(words[x].size());
    }
    totals.push_back(total);
    g.ratios.push_back(total / totals[totals.size() - 2]);
    g.iterations = m;
    // Short integer length sequences repeat ratios by coincidence (3, 4, 5, 7,
    // 9, 12, 16 has 12/9 = 16/12), so a whole window has to agree.
    if (g.ratios.size() >= kStableWindow) {
      const auto tail = std::span(g.ratios).last(kStableWindow);
      const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
      if (*hi - *lo < options.tol) {
        g.converged = true;
        break;
      }
    }
  }
  const std::size_t m = g.iterations;
  if (m == 0) {
    // Not a single iteration fits: the first image alone exceeds the budget.
    g.lambda = g.lambda_log = static_cast<double>(options.budget) / static_cast<double>(k);
    return g;
  }
  g.lambda_log = std::exp((std::log(totals[m]) - std::log(totals[0])) / static_cast<double>(m));
  if (g.converged || g.budget_hit) {
    g.lambda = g.ratios.back();
  } else {
    // Periodic or polynomial length sequences: geometric mean over a window
    // that is a multiple of every small period.
    const std::size_t p = std::min<std::size_t>(m, 24);
    g.lambda = std::pow(totals[m] / totals[m - p], 1.0 / static_cast<double>(p));
  }
  return g;
}

GeneratingSet default_outer_generators() {
  const int k = 3;
  auto A = [&](const char* name, std::vector<std::string> im, std::vector<std::string> inv) {
    return Automorphism::parse(k, im, inv, name);
  };
  GeneratingSet s;
  s.elements = {
      A("tau_ab", {"ab", "b", "c"}, {"aB", "b", "c"}),   A("tau_ab^-1", {"aB", "b", "c"}, {"ab", "b", "c"}),
      A("tau_bc", {"a", "bc", "c"}, {"a", "bC", "c"}),   A("tau_bc^-1", {"a", "bC", "c"}, {"a", "bc", "c"}),
      A("tau_ca", {"a", "b", "ca"}, {"a", "b", "cA"}),   A("tau_ca^-1", {"a", "b", "cA"}, {"a", "b", "ca"}),
      A("sigma", {"b", "c", "a"}, {"c", "a", "b"}),      A("sigma^-1", {"c", "a", "b"}, {"b", "c", "a"}),
  };
  return s;
}

OuterSummary outer_walk_experiment(const GeneratingSet& gens, const OuterOptions& options) {
  if (gens.elements.empty()) fail(ErrorCode::invalid_argument, "generating set is empty");
  const int rank = gens.elements.front().rank();
  if (rank < 3) fail(ErrorCode::precondition, "outer walk experiment needs rank >= 3");
  for (const auto& g : gens.elements) {
    if (g.rank() != rank) fail(ErrorCode::rank_mismatch, "generators differ in rank");
  }
  if (options.trials == 0) fail(ErrorCode::invalid_argument, "trials must be positive");
  if (options.n_list.empty()) fail(ErrorCode::invalid_argument, "n_list is empty");
  std::vector<std::size_t> ns = options.n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  std::vector<double> cdf;
  {
    const std::size_t m = gens.elements.size();
    std::vector<double> p = gens.probabilities;
    if (p.empty()) p.assign(m, 1.0 / static_cast<double>(m));
    if (p.size() != m) fail(ErrorCode::invalid_argument, "probabilities do not match the generating set");
    double acc = 0;
    for (double v : p) {
      if (!(v > 0)) fail(ErrorCode::invalid_argument, "probabilities must be positive");
      acc += v;
      cdf.push_back(acc);
    }
    if (std::abs(acc - 1) > 1e-12) fail(ErrorCode::invalid_argument, "probabilities must sum to 1");
    cdf.back() = 1.0;
  }

  const auto per_trial = parallel_map<std::vector<OuterRow>>(options.trials, [&](std::size_t t) {
    const TrialRng rng(options.seed, t, Stream::forward);
    Automorphism Z = Automorphism::identity(rank);
    std::vector<OuterRow> rows;
    std::size_t step = 0;
    for (std::size_t n : ns) {
      for (; step < n; ++step) {
        const double u = rng.uniform(step);
        const auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        Z = compose(Z, gens.elements[std::min(idx, cdf.size() - 1)]);
      }
      const GrowthEstimate f = growth_rate(Z, options.growth);
      const GrowthEstimate b = growth_rate(Z.inverse(), options.growth);
      OuterRow r;
      r.trial = t;
      r.n = n;
      r.lambda_fwd = f.lambda;
      r.lambda_bwd = b.lambda;
      r.delta = std::log(f.lambda) - std::log(b.lambda);
      r.confident = f.converged && b.converged;
      rows.push_back(r);
    }
    return rows;
  });

  OuterSummary s;
  s.n_list = ns;
  s.K = options.K;
  for (const auto& rs : per_trial) s.rows.insert(s.rows.end(), rs.begin(), rs.end());
  std::size_t low = 0;
  for (const auto& r : s.rows) low += r.confident ? 0 : 1;
  s.low_confidence_fraction = static_cast<double>(low) / static_cast<double>(s.rows.size());
  s.flagged = s.low_confidence_fraction > options.low_confidence_limit;

  for (double K : options.K) {
    std::vector<StatRow> per_n;
    for (std::size_t k = 0; k < ns.size(); ++k) {
      std::size_t hits = 0;
      for (const auto& rs : per_trial) hits += std::abs(rs[k].delta) < K ? 1 : 0;
      char name[64];
      std::snprintf(name, sizeof name, "P(|delta|<%g)", K);
      per_n.push_back(proportion_row(ns[k], name, hits, options.trials));
    }
    s.probability.push_back(std::move(per_n));
  }
  for (std::size_t k = 0; k < ns.size(); ++k) {
    std::vector<double> ratios;
    for (const auto& rs : per_trial) {
      const double lo = std::min(std::log(rs[k].lambda_fwd), std::log(rs[k].lambda_bwd));
      if (lo > 1e-9) ratios.push_back(std::abs(rs[k].delta) / lo);
    }
    s.bounded_ratio_q90.push_back(ratios.empty() ? 0.0 : quantile(ratios, 0.9));
  }
  if (!s.probability.empty()) {
    const auto& p = s.probability.front();
    s.non_increasing = true;
    for (std::size_t k = 1; k < p.size(); ++k) {
      if (p[k].value > p[k - 1].value) s.non_increasing = false;
    }
    s.final_below_initial = p.back().value < p.front().value;
  }
  return s;
}

std::vector<StatRow> OuterSummary::stat_rows() const {
  std::vector<StatRow> r;
  for (const auto& per_n : probability) r.insert(r.end(), per_n.begin(), per_n.end());
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    r.push_back(point_row(n_list[k], "bounded_ratio_q90", 0, bounded_ratio_q90[k]));
  }
  r.push_back(point_row(n_list.back(), "low_confidence_fraction", rows.size(), low_confidence_fraction));
  return r;
}

void write_outer_csv(std::ostream& out, const OuterSummary& summary) {
  out << "trial,n,lambda_fwd,lambda_bwd,delta,confidence\n";
  char buf[160];
  for (const auto& r : summary.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.12g,%.12g,%.12g,%s\n", r.trial, r.n, r.lambda_fwd, r.lambda_bwd,
                  r.delta, r.confident ? "high" : "low");
    out << buf;
  }
}

}  // namespace asymwalk
