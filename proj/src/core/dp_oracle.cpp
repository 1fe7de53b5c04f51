#include "dp_oracle.hpp"

#include <cmath>
#include <map>

#include "stats.hpp"

namespace asymwalk {

double DisplacementLaw::mean() const {
  CompensatedSum s;
  for (std::size_t i = 0; i < units.size(); ++i) s.add(probs[i] * static_cast<double>(units[i]));
  return s.value() / static_cast<double>(denominator);
}

double DisplacementLaw::variance() const {
  const double m = mean();
  CompensatedSum s;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const double x = static_cast<double>(units[i]) / static_cast<double>(denominator) - m;
    s.add(probs[i] * x * x);
  }
  return s.value();
}

double DisplacementLaw::lower_tail(double x) const {
  CompensatedSum s;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (static_cast<double>(units[i]) <= x * static_cast<double>(denominator) + 1e-9) s.add(probs[i]);
  }
  return s.value();
}

double DisplacementLaw::upper_tail(double x) const {
  CompensatedSum s;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (static_cast<double>(units[i]) >= x * static_cast<double>(denominator) - 1e-9) s.add(probs[i]);
  }
  return s.value();
}

namespace {

DisplacementLaw from_dense(std::size_t n, const WeightScheme& ws, const std::vector<double>& dense) {
  DisplacementLaw law;
  law.n = n;
  law.denominator = ws.denominator();
  for (std::size_t w = 0; w < dense.size(); ++w) {
    if (dense[w] > 0) {
      law.units.push_back(static_cast<std::int64_t>(w));
      law.probs.push_back(dense[w]);
    }
  }
  return law;
}

void require_nearest_neighbor(const MeasureSpec& mu, const WeightScheme& ws) {
  if (mu.rank() != ws.rank()) fail(ErrorCode::rank_mismatch, "measure and weights differ in rank");
  if (!mu.nearest_neighbor()) {
    fail(ErrorCode::unsupported, "exact displacement law needs a nearest-neighbour measure");
  }
}

bool is_radial(const MeasureSpec& mu) {
  const int k = mu.rank();
  if (mu.size() != static_cast<std::size_t>(2 * k)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(2 * k), false);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Word& w = mu.element(i);
    if (w.size() != 1) return false;
    if (std::abs(mu.probabilities()[i] - 1.0 / (2.0 * k)) > 1e-12) return false;
    const Letter l = w[0];
    seen[static_cast<std::size_t>(l > 0 ? l - 1 : k - l - 1)] = true;
  }
  for (bool b : seen) {
    if (!b) return false;
  }
  return true;
}

// Law of the word length for simple random walk on the 2k-regular tree.
std::vector<double> radial_length_law(int k, std::size_t n) {
  const double up = (2.0 * k - 1) / (2.0 * k);
  const double down = 1.0 / (2.0 * k);
  std::vector<double> p(n + 2, 0.0), q(n + 2, 0.0);
  p[0] = 1;
  for (std::size_t t = 0; t < n; ++t) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t l = t % 2; l <= t; l += 2) {
      if (p[l] == 0) continue;
      if (l == 0) {
        q[1] += p[0];
      } else {
        q[l + 1] += p[l] * up;
        q[l - 1] += p[l] * down;
      }
    }
    std::swap(p, q);
  }
  p.resize(n + 1);
  return p;
}

std::vector<Letter> all_letters(int k) {
  std::vector<Letter> ls;
  for (Letter g = 1; g <= k; ++g) {
    ls.push_back(g);
    ls.push_back(-g);
  }
  return ls;
}

DisplacementLaw radial_law(const MeasureSpec& mu, std::size_t n, const WeightScheme& ws, double budget) {
  const int k = mu.rank();
  const std::vector<double> len = radial_length_law(k, n);
  const std::vector<Letter> letters = all_letters(k);
  const std::size_t m = letters.size();
  if (ws.min_units() == ws.max_units()) {
    const auto u = static_cast<std::size_t>(ws.min_units());
    std::vector<double> dense(n * u + 1, 0.0);
    for (std::size_t l = 0; l <= n; ++l) dense[l * u] += len[l];
    return from_dense(n, ws, dense);
  }
  const double cost = static_cast<double>(m * (m - 1)) * static_cast<double>(ws.max_units()) *
                      static_cast<double>(n) * static_cast<double>(n) / 2.0;
  if (cost > budget) fail(ErrorCode::unsupported, "weighted radial law exceeds the work budget");

  // f[j][W]: uniform reduced word of the current length ending in letters[j].
  const std::size_t maxu = static_cast<std::size_t>(ws.max_units());
  const std::size_t width = n * maxu + 1;
  std::vector<double> dense(width, 0.0);
  dense[0] += len[0];
  std::vector<std::vector<double>> f(m, std::vector<double>(width, 0.0)), g = f;
  for (std::size_t j = 0; j < m; ++j) f[j][static_cast<std::size_t>(ws.units(letters[j]))] = 1.0 / static_cast<double>(m);
  const double branch = 1.0 / static_cast<double>(m - 1);
  for (std::size_t p = 1; p <= n; ++p) {
    const std::size_t top = p * maxu;
    if (len[p] > 0) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t w = 0; w <= top; ++w) dense[w] += len[p] * f[j][w];
      }
    }
    if (p == n) break;
    for (auto& row : g) std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(top + maxu + 1), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t jn = 0; jn < m; ++jn) {
        if (letters[jn] == inverse(letters[j])) continue;
        const auto shift = static_cast<std::size_t>(ws.units(letters[jn]));
        for (std::size_t w = 0; w <= top; ++w) g[jn][w + shift] += f[j][w] * branch;
      }
    }
    std::swap(f, g);
  }
  return from_dense(n, ws, dense);
}

// Last-exit decomposition: Z_n = x_1 ... x_l is reached by a final visit to o
// at some time, then for each prefix a step to x_i followed by an excursion
// that returns to the prefix without visiting its parent.
DisplacementLaw last_exit_law(const MeasureSpec& mu, std::size_t n, const WeightScheme& ws, double budget) {
  const std::size_t m = mu.size();
  std::vector<Letter> sl(m);
  std::vector<double> pr = mu.probabilities();
  std::vector<int> inv(m, -1);
  for (std::size_t j = 0; j < m; ++j) sl[j] = mu.element(j)[0];
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (sl[i] == inverse(sl[j])) inv[j] = static_cast<int>(i);
    }
  }
  const auto maxu = static_cast<std::size_t>(ws.max_units());
  const double nn = static_cast<double>(n);
  const double cost = nn * nn * nn * static_cast<double>(m) * static_cast<double>(maxu) / 6.0 +
                      nn * nn * static_cast<double>(m * m) * static_cast<double>(maxu) / 2.0;
  const double cells = 2.0 * (nn + 1) * static_cast<double>(m) * (nn * static_cast<double>(maxu) + 1);
  if (cost > budget || cells > 3e7) fail(ErrorCode::unsupported, "last-exit law exceeds the work budget");

  // T[j][s]: first hitting time of the neighbour sl[j] from o.
  std::vector<std::vector<double>> T(m, std::vector<double>(n + 1, 0.0));
  // E[j][a] = T[inv j][a]: return to o after stepping to sl[j].
  auto E = [&](std::size_t j, std::size_t a) { return inv[j] < 0 ? 0.0 : T[static_cast<std::size_t>(inv[j])][a]; };
  // side[j][a] = sum over j' != j of mu_j' E_j'(a).
  std::vector<std::vector<double>> side(m, std::vector<double>(n + 1, 0.0));
  for (std::size_t s = 1; s <= n; ++s) {
    for (std::size_t j = 0; j < m; ++j) {
      double v = s == 1 ? pr[j] : 0.0;
      for (std::size_t a = 1; a + 2 <= s; ++a) v += side[j][a] * T[j][s - 1 - a];
      T[j][s] = v;
    }
    for (std::size_t j = 0; j < m; ++j) {
      double v = 0;
      for (std::size_t jp = 0; jp < m; ++jp) {
        if (jp != j) v += pr[jp] * E(jp, s);
      }
      side[j][s] = v;
    }
  }
  std::vector<double> R(n + 1, 0.0);
  R[0] = 1;
  for (std::size_t t = 1; t <= n; ++t) {
    double v = 0;
    for (std::size_t s = 2; s <= t; ++s) {
      double y = 0;
      for (std::size_t j = 0; j < m; ++j) y += pr[j] * E(j, s - 1);
      v += y * R[t - s];
    }
    R[t] = v;
  }
  std::vector<std::vector<double>> H(m, std::vector<double>(n + 1, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> X(n + 1, 0.0);
    for (std::size_t s = 2; s <= n; ++s) {
      for (std::size_t jp = 0; jp < m; ++jp) {
        if (static_cast<int>(jp) != inv[j]) X[s] += pr[jp] * E(jp, s - 1);
      }
    }
    H[j][0] = 1;
    for (std::size_t t = 1; t <= n; ++t) {
      double v = 0;
      for (std::size_t s = 2; s <= t; ++s) v += X[s] * H[j][t - s];
      H[j][t] = v;
    }
  }

  const std::size_t width = n * maxu + 1;
  auto at = [&](std::size_t t, std::size_t j) { return (t * m + j) * width; };
  std::vector<double> A((n + 1) * m * width, 0.0), B = A;
  for (std::size_t t = 1; t <= n; ++t) {
    const std::size_t top = t * maxu;
    for (std::size_t j = 0; j < m; ++j) {
      const auto wj = static_cast<std::size_t>(ws.units(sl[j]));
      double* a = &A[at(t, j)];
      a[wj] += pr[j] * R[t - 1];
      if (t >= 2) {
        for (std::size_t jp = 0; jp < m; ++jp) {
          if (inv[jp] == static_cast<int>(j)) continue;
          const double* b = &B[at(t - 1, jp)];
          for (std::size_t w = 0; w + wj <= top; ++w) a[w + wj] += pr[j] * b[w];
        }
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      double* b = &B[at(t, j)];
      for (std::size_t s = 0; s < t; s += 2) {
        const double h = H[j][s];
        if (h == 0) continue;
        const double* a = &A[at(t - s, j)];
        for (std::size_t w = 0; w <= top; ++w) b[w] += h * a[w];
      }
    }
  }
  std::vector<double> dense(width, 0.0);
  dense[0] += R[n];
  for (std::size_t j = 0; j < m; ++j) {
    const double* b = &B[at(n, j)];
    for (std::size_t w = 0; w < width; ++w) dense[w] += b[w];
  }
  return from_dense(n, ws, dense);
}

}  // namespace

DisplacementLaw displacement_law(const MeasureSpec& mu, std::size_t n, const WeightScheme& ws, double budget) {
  require_nearest_neighbor(mu, ws);
  if (n == 0) return from_dense(0, ws, {1.0});
  if (is_radial(mu)) return radial_law(mu, n, ws, budget);
  return last_exit_law(mu, n, ws, budget);
}

double exact_drift(const MeasureSpec& mu, std::size_t n, const WeightScheme& ws) {
  require_nearest_neighbor(mu, ws);
  if (n == 0) return 0;
  if (is_radial(mu)) {
    // Each letter of a uniform reduced word is marginally uniform.
    const std::vector<double> len = radial_length_law(mu.rank(), n);
    CompensatedSum el;
    for (std::size_t l = 0; l <= n; ++l) el.add(static_cast<double>(l) * len[l]);
    double mean_w = 0;
    for (Letter l : all_letters(mu.rank())) mean_w += ws.weight(l);
    mean_w /= 2.0 * mu.rank();
    return el.value() * mean_w / static_cast<double>(n);
  }
  return displacement_law(mu, n, ws).mean() / static_cast<double>(n);
}

DisplacementLaw enumerate_displacement(const MeasureSpec& mu, std::size_t n, const WeightScheme& ws) {
  if (mu.rank() != ws.rank()) fail(ErrorCode::rank_mismatch, "measure and weights differ in rank");
  if (std::pow(static_cast<double>(mu.size()), static_cast<double>(n)) > 5e6) {
    fail(ErrorCode::unsupported, "enumeration too large");
  }
  std::map<std::int64_t, double> atoms;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    WordBuilder b(mu.rank());
    double p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      b.append(mu.element(idx[i]));
      p *= mu.probabilities()[idx[i]];
    }
    atoms[ws.word_units(std::move(b).build())] += p;
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == mu.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  DisplacementLaw law;
  law.n = n;
  law.denominator = ws.denominator();
  for (const auto& [u, p] : atoms) {
    law.units.push_back(u);
    law.probs.push_back(p);
  }
  return law;
}

}  // namespace asymwalk
