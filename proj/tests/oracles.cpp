#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace kmoment::testing {

std::vector<std::vector<int>> brute_force_basis(std::size_t d, int n) {
  std::vector<std::vector<int>> all;
  std::vector<int> cur(d, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == d) {
      int sum = 0;
      for (int v : cur) sum += v;
      if (sum <= n) all.push_back(cur);
      return;
    }
    for (int v = 0; v <= n; ++v) {
      cur[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(all.begin(), all.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    int sa = 0, sb = 0;
    for (int v : a) sa += v;
    for (int v : b) sb += v;
    if (sa != sb) return sa < sb;
    return a > b;  // lexicographically larger first
  });
  return all;
}

std::optional<std::vector<double>> gaussian_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : a) for (double v : row) scale = std::max(scale, std::abs(v));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) <= 1e-12 * std::max(scale, 1.0)) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

std::optional<std::vector<double>> slice_minimal_recurrence(const std::vector<double>& s, double rel_tol) {
  if (std::all_of(s.begin(), s.end(), [](double v) { return v == 0.0; })) return std::vector<double>{};
  for (std::size_t order = 1; 2 * order <= s.size(); ++order) {
    std::vector<std::vector<double>> a(order, std::vector<double>(order));
    std::vector<double> b(order);
    for (std::size_t k = 0; k < order; ++k) {
      b[k] = s[k + order];
      for (std::size_t j = 1; j <= order; ++j) a[k][j - 1] = s[k + order - j];
    }
    auto coef = gaussian_solve(a, b);
    if (!coef) continue;
    bool fits = true;
    for (std::size_t k = 0; k + order < s.size() && fits; ++k) {
      double pred = 0.0, mag = 0.0;
      for (std::size_t j = 1; j <= order; ++j) {
        pred += (*coef)[j - 1] * s[k + order - j];
        mag += std::abs((*coef)[j - 1] * s[k + order - j]);
      }
      fits = std::abs(pred - s[k + order]) <= rel_tol * std::max({mag, std::abs(s[k + order]), 1.0});
    }
    if (fits) return coef;
  }
  return std::nullopt;
}

std::vector<double> expand_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

double direct_moment(const AtomicMeasure& mu, const std::vector<int>& idx) {
  double sum = 0.0;
  for (const Atom& a : mu.atoms) {
    double t = a.weight;
    for (std::size_t l = 0; l < idx.size(); ++l) t *= std::pow(a.point[l], idx[l]);
    sum += t;
  }
  return sum;
}

Matching match_atoms(const AtomicMeasure& truth, const AtomicMeasure& found, double gate) {
  Matching m;
  if (truth.atoms.size() != found.atoms.size()) return m;
  std::vector<bool> used(found.atoms.size(), false);
  for (const Atom& t : truth.atoms) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < found.atoms.size(); ++k) {
      if (used[k]) continue;
      double dist = 0.0;
      for (std::size_t l = 0; l < t.point.size(); ++l) dist = std::max(dist, std::abs(t.point[l] - found.atoms[k].point[l]));
      if (dist < best) {
        best = dist;
        best_k = k;
      }
    }
    if (best > gate) return m;
    used[best_k] = true;
    m.max_point_error = std::max(m.max_point_error, best);
    m.max_weight_error = std::max(m.max_weight_error, std::abs(t.weight - found.atoms[best_k].weight));
  }
  m.ok = true;
  return m;
}

}  // namespace kmoment::testing
