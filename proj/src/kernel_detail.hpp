#pragma once

#include <cstddef>
#include <span>

namespace qbg::kernels::detail {

inline double horner_tail(std::span<const double> coeffs, double x) {
  // sum_n coeffs[n-1] x^n = x * (c1 + x * (c2 + ...))
  double acc = 0.0;
  for (std::size_t n = coeffs.size(); n-- > 0;) acc = coeffs[n] + x * acc;
  return x * acc;
}

inline void accumulate_powers(double p, double d, std::span<double> acc) {
  double term = p;
  for (double& a : acc) {
    term *= d;
    a += term;
  }
}

// Upper triangle only; callers mirror it once at the end.
inline void accumulate_covariance(double p, double x, std::span<const double> means,
                                  std::span<double> dev, std::span<double> acc) {
  const std::size_t order = means.size();
  double power = 1.0;
  for (std::size_t j = 0; j < order; ++j) {
    power *= x;
    dev[j] = power - means[j];
  }
  for (std::size_t j = 0; j < order; ++j) {
    const double pj = p * dev[j];
    for (std::size_t k = j; k < order; ++k) acc[j * order + k] += pj * dev[k];
  }
}

inline void mirror_upper(std::size_t order, std::span<double> out) {
  for (std::size_t j = 0; j < order; ++j)
    for (std::size_t k = 0; k < j; ++k) out[j * order + k] = out[k * order + j];
}

}  // namespace qbg::kernels::detail
