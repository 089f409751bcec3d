#pragma once

// Test-only reference computations. Nothing here calls into the library's
// kernels: weights are evaluated with std::pow/std::exp and normalized by a
// plain sum, polynomials are expanded by explicit multiplication, and
// derivatives come from central differences.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// Normalizes g_i * w_i with a plain sum (no log space).
inline std::vector<double> normalize(const std::vector<double>& weights,
                                     const std::vector<std::int64_t>& degeneracies) {
  std::vector<double> p(weights.size());
  double z = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    p[i] = static_cast<double>(degeneracies[i]) * weights[i];
    z += p[i];
  }
  for (double& x : p) x /= z;
  return p;
}

/// exp(-sum_n beta_n E^n) with every power taken by std::pow.
inline double ext_weight(const std::vector<double>& beta, double e) {
  double exponent = 0.0;
  for (std::size_t n = 1; n <= beta.size(); ++n) exponent += beta[n - 1] * std::pow(e, double(n));
  return std::exp(-exponent);
}

/// [1 - (1-q) beta E]^(1/(1-q)), zero beyond the cutoff.
inline double q_weight(double q, double beta, double e) {
  const double bracket = 1.0 - (1.0 - q) * beta * e;
  if (bracket <= 0.0) return 0.0;
  return std::pow(bracket, 1.0 / (1.0 - q));
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Coefficients (index = power) of sum_n c_n (E - center)^n, expanded by
/// multiplying out (E - center) repeatedly.
inline std::vector<double> expand_centered(const std::vector<double>& c, double center) {
  std::vector<double> total(c.size() + 1, 0.0);
  std::vector<double> power{1.0};  // (E - center)^0
  for (std::size_t n = 1; n <= c.size(); ++n) {
    std::vector<double> next(power.size() + 1, 0.0);
    for (std::size_t k = 0; k < power.size(); ++k) {
      next[k + 1] += power[k];
      next[k] -= center * power[k];
    }
    power = next;
    for (std::size_t k = 0; k < power.size(); ++k) total[k] += c[n - 1] * power[k];
  }
  return total;
}

inline std::vector<double> central_gradient(const std::function<double(const std::vector<double>&)>& f,
                                            std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double up = f(x);
    x[i] = saved - h;
    const double down = f(x);
    x[i] = saved;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

/// jac[i][j] = d f_i / d x_j.
inline std::vector<std::vector<double>> central_jacobian(
    const std::function<std::vector<double>(const std::vector<double>&)>& f, std::vector<double> x,
    double h) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> jac(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double saved = x[j];
    x[j] = saved + h;
    const auto up = f(x);
    x[j] = saved - h;
    const auto down = f(x);
    x[j] = saved;
    for (std::size_t i = 0; i < up.size(); ++i) jac[i][j] = (up[i] - down[i]) / (2.0 * h);
  }
  return jac;
}

/// Sorted distinct levels drawn uniformly from [lo, hi].
inline std::vector<double> random_levels(std::mt19937_64& rng, std::size_t count, double lo,
                                         double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> levels;
  while (levels.size() < count) {
    levels.push_back(u(rng));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  }
  return levels;
}

inline std::vector<std::int64_t> random_degeneracies(std::mt19937_64& rng, std::size_t count,
                                                     std::int64_t max_g) {
  std::uniform_int_distribution<std::int64_t> u(1, max_g);
  std::vector<std::int64_t> g(count);
  for (auto& x : g) x = u(rng);
  return g;
}

/// Random probability vector; some entries may be exactly zero.
inline std::vector<double> random_probs(std::mt19937_64& rng, std::size_t count,
                                        bool allow_zeros = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(count);
  double total = 0.0;
  for (auto& x : p) {
    x = u(rng);
    if (allow_zeros && x < 0.15) x = 0.0;
    total += x;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace oracle
