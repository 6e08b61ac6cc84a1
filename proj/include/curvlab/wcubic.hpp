#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "curvlab/core.hpp"

namespace curvlab {

/// max of sum x_i^3 / sum x_i^2 over sum x_i = 0, x_i <= s, x != 0.
inline double wcubic_closed_form(double s, int n) {
  if (!(s > 0)) throw InputError("wcubic_closed_form: s must be positive");
  if (n < 2) throw InputError("wcubic_closed_form: n must be >= 2");
  return s * (n - 2) / (n - 1);
}

struct WcubicOracleResult {
  double best;            // max of ascent_best and candidate_best
  double ascent_best;     // projected-gradient multi-start only
  double candidate_best;  // structured KKT candidates only
  long evaluations;
  bool budget_exhausted;
};

namespace detail {

inline double cubic_ratio(const std::vector<double>& x) {
  double s2 = 0.0;
  double s3 = 0.0;
  for (double v : x) {
    s2 += v * v;
    s3 += v * v * v;
  }
  return s2 > 0 ? s3 / s2 : -HUGE_VAL;
}

/// Euclidean projection onto {sum y = 0, y_i <= s}: y_i = min(z_i - nu, s).
inline std::vector<double> project_capped_simplex(const std::vector<double>& z, double s) {
  const int n = static_cast<int>(z.size());
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double tail = 0.0;
  for (double v : sorted) tail += v;
  double nu = tail / n;
  for (int k = 0; k < n; ++k) {
    // k largest entries clipped at s: k s + sum_{i>=k} (z_i - nu) = 0
    nu = (tail + k * s) / (n - k);
    const bool clipped_ok = k == 0 || sorted[static_cast<std::size_t>(k - 1)] - nu >= s;
    const bool free_ok = sorted[static_cast<std::size_t>(k)] - nu <= s;
    if (clipped_ok && free_ok) break;
    tail -= sorted[static_cast<std::size_t>(k)];
  }
  std::vector<double> y(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) y[i] = std::min(z[i] - nu, s);
  return y;
}

}  // namespace detail

/// Independent numerical maximization: 64 projected-gradient multi-starts with step halving,
/// plus the KKT candidates with q entries at s, m entries at y1 and the rest at a common y2.
inline WcubicOracleResult wcubic_oracle(double s, int n, long budget = 100000, std::uint64_t seed = 7) {
  if (!(s > 0)) throw InputError("wcubic_oracle: s must be positive");
  if (n < 2 || n > 12) throw InputError("wcubic_oracle: n must lie in [2, 12]");
  WcubicOracleResult out{-HUGE_VAL, -HUGE_VAL, -HUGE_VAL, 0, false};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int starts = 64;
  const long per_start = std::max<long>(1, budget / starts);

  for (int st = 0; st < starts; ++st) {
    std::vector<double> z(static_cast<std::size_t>(n));
    for (double& v : z) v = s * u(rng);
    std::vector<double> x = detail::project_capped_simplex(z, s);
    double fx = detail::cubic_ratio(x);
    ++out.evaluations;
    double step = 0.5 * s;
    long used = 1;
    while (used < per_start && step > 1e-14 * s) {
      double s2 = 0.0;
      double s3 = 0.0;
      for (double v : x) {
        s2 += v * v;
        s3 += v * v * v;
      }
      if (s2 <= 0) break;
      std::vector<double> grad(x.size());
      double gnorm = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        grad[i] = (3.0 * x[i] * x[i] * s2 - 2.0 * x[i] * s3) / (s2 * s2);
        gnorm += grad[i] * grad[i];
      }
      gnorm = std::sqrt(gnorm);
      if (gnorm == 0) break;
      std::vector<double> trial(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * grad[i] / gnorm;
      trial = detail::project_capped_simplex(trial, s);
      const double ft = detail::cubic_ratio(trial);
      ++used;
      if (ft > fx) {
        x = std::move(trial);
        fx = ft;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    out.evaluations += used - 1;
    out.ascent_best = std::max(out.ascent_best, fx);
  }
  out.budget_exhausted = out.evaluations >= budget;

  // Structured candidates; y1 scanned then refined by golden section.
  auto candidate = [&](int q, int m, double y1) -> double {
    const int r = n - q - m;
    std::vector<double> x;
    x.insert(x.end(), static_cast<std::size_t>(q), s);
    x.insert(x.end(), static_cast<std::size_t>(m), y1);
    if (r > 0) {
      const double y2 = (-q * s - m * y1) / r;
      if (y2 > s) return -HUGE_VAL;
      x.insert(x.end(), static_cast<std::size_t>(r), y2);
    } else if (std::abs(q * s + m * y1) > 1e-12 * s * n) {
      return -HUGE_VAL;
    }
    return detail::cubic_ratio(x);
  };
  for (int q = 0; q <= n; ++q)
    for (int m = 0; q + m <= n; ++m) {
      if (m == 0) {
        out.candidate_best = std::max(out.candidate_best, candidate(q, 0, 0.0));
        continue;
      }
      if (q + m == n) {
        out.candidate_best = std::max(out.candidate_best, candidate(q, m, -q * s / m));
        continue;
      }
      const double lo = -n * s;
      const double hi = s;
      const int grid = 200;
      int best_k = 0;
      double best_v = -HUGE_VAL;
      for (int k = 0; k <= grid; ++k) {
        const double v = candidate(q, m, lo + (hi - lo) * k / grid);
        if (v > best_v) {
          best_v = v;
          best_k = k;
        }
      }
      double a = lo + (hi - lo) * std::max(0, best_k - 1) / grid;
      double b = lo + (hi - lo) * std::min(grid, best_k + 1) / grid;
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      for (int it = 0; it < 80; ++it) {
        const double c = b - gr * (b - a);
        const double d = a + gr * (b - a);
        if (candidate(q, m, c) >= candidate(q, m, d)) {
          b = d;
        } else {
          a = c;
        }
      }
      best_v = std::max({best_v, candidate(q, m, a), candidate(q, m, b), candidate(q, m, 0.5 * (a + b))});
      out.candidate_best = std::max(out.candidate_best, best_v);
    }
  out.best = std::max(out.ascent_best, out.candidate_best);
  return out;
}

}  // namespace curvlab
