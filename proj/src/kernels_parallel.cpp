#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <vector>

#include "kernel_detail.hpp"
#include "qbg/kernels.hpp"

namespace qbg::kernels::parallel {
namespace {

std::ptrdiff_t chunk_count(std::size_t n) {
  return static_cast<std::ptrdiff_t>((n + kChunk - 1) / kChunk);
}

std::size_t chunk_begin(std::ptrdiff_t c) { return static_cast<std::size_t>(c) * kChunk; }

std::size_t chunk_end(std::ptrdiff_t c, std::size_t n) {
  return std::min(n, chunk_begin(c) + kChunk);
}

// Sums `width`-wide partial rows in chunk order.
void combine_partials(std::span<const double> partials, std::size_t width, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t row = 0; row < partials.size() / width; ++row)
    for (std::size_t k = 0; k < width; ++k) out[k] += partials[row * width + k];
}

}  // namespace

void polynomial_log_weights(std::span<const double> levels, std::span<const double> log_deg,
                            std::span<const double> coeffs, double center, std::span<double> out) {
  assert(levels.size() == log_deg.size() && levels.size() == out.size());
  const auto n = static_cast<std::ptrdiff_t>(levels.size());
#pragma omp parallel for schedule(static) if (levels.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = log_deg[i] - detail::horner_tail(coeffs, levels[i] - center);
}

double log_sum_exp(std::span<const double> x) {
  const std::size_t n = x.size();
  const auto signed_n = static_cast<std::ptrdiff_t>(n);
  double top = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : top) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < signed_n; ++i) top = std::max(top, x[i]);
  if (!std::isfinite(top)) return top;

  const auto chunks = chunk_count(n);
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    double sum = 0.0;
    for (std::size_t i = chunk_begin(c); i < chunk_end(c, n); ++i) sum += std::exp(x[i] - top);
    partial[c] = sum;
  }
  double sum = 0.0;
  for (double s : partial) sum += s;
  return top + std::log(sum);
}

double softmax(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  const std::size_t n = x.size();
  const auto signed_n = static_cast<std::ptrdiff_t>(n);
  double top = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : top) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < signed_n; ++i) top = std::max(top, x[i]);
  assert(std::isfinite(top));

  const auto chunks = chunk_count(n);
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    double sum = 0.0;
    for (std::size_t i = chunk_begin(c); i < chunk_end(c, n); ++i) sum += out[i] = std::exp(x[i] - top);
    partial[c] = sum;
  }
  double sum = 0.0;
  for (double s : partial) sum += s;
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < signed_n; ++i) out[i] /= sum;
  return top + std::log(sum);
}

void power_sums(std::span<const double> probs, std::span<const double> levels, double center,
                std::span<double> out) {
  assert(probs.size() == levels.size());
  const std::size_t n = probs.size();
  const std::size_t width = out.size();
  const auto chunks = chunk_count(n);
  std::vector<double> partials(static_cast<std::size_t>(chunks) * width, 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    std::span<double> acc(partials.data() + static_cast<std::size_t>(c) * width, width);
    for (std::size_t i = chunk_begin(c); i < chunk_end(c, n); ++i)
      detail::accumulate_powers(probs[i], levels[i] - center, acc);
  }
  combine_partials(partials, width, out);
}

void monomial_covariance(std::span<const double> probs, std::span<const double> levels,
                         std::span<const double> means, std::span<double> out) {
  const std::size_t order = means.size();
  assert(probs.size() == levels.size() && out.size() == order * order);
  const std::size_t n = probs.size();
  const std::size_t width = order * order;
  const auto chunks = chunk_count(n);
  std::vector<double> partials(static_cast<std::size_t>(chunks) * width, 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    std::vector<double> dev(order);
    std::span<double> acc(partials.data() + static_cast<std::size_t>(c) * width, width);
    for (std::size_t i = chunk_begin(c); i < chunk_end(c, n); ++i)
      detail::accumulate_covariance(probs[i], levels[i], means, dev, acc);
  }
  combine_partials(partials, width, out);
  detail::mirror_upper(order, out);
}

}  // namespace qbg::kernels::parallel
