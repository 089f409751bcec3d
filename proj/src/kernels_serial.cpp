#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <vector>

#include "kernel_detail.hpp"
#include "qbg/kernels.hpp"

namespace qbg::kernels::serial {

void polynomial_log_weights(std::span<const double> levels, std::span<const double> log_deg,
                            std::span<const double> coeffs, double center, std::span<double> out) {
  assert(levels.size() == log_deg.size() && levels.size() == out.size());
  for (std::size_t i = 0; i < levels.size(); ++i)
    out[i] = log_deg[i] - detail::horner_tail(coeffs, levels[i] - center);
}

double log_sum_exp(std::span<const double> x) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : x) top = std::max(top, v);
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - top);
  return top + std::log(sum);
}

double softmax(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  double top = -std::numeric_limits<double>::infinity();
  for (double v : x) top = std::max(top, v);
  assert(std::isfinite(top));
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += out[i] = std::exp(x[i] - top);
  for (double& p : out) p /= sum;
  return top + std::log(sum);
}

void power_sums(std::span<const double> probs, std::span<const double> levels, double center,
                std::span<double> out) {
  assert(probs.size() == levels.size());
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i)
    detail::accumulate_powers(probs[i], levels[i] - center, out);
}

void monomial_covariance(std::span<const double> probs, std::span<const double> levels,
                         std::span<const double> means, std::span<double> out) {
  const std::size_t order = means.size();
  assert(probs.size() == levels.size() && out.size() == order * order);
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> dev(order);
  for (std::size_t i = 0; i < probs.size(); ++i)
    detail::accumulate_covariance(probs[i], levels[i], means, dev, out);
  detail::mirror_upper(order, out);
}

}  // namespace qbg::kernels::serial
