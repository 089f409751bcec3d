#pragma once

// Level-wise numerical kernels shared by every distribution in the library.
//
// Two implementations live side by side. `serial` is the straightforward
// single-loop reference kept for testing. `parallel` is the OpenMP version the
// library calls; its reductions are split into fixed kChunk-sized blocks whose
// partial results are combined in block order, so the output is bit-identical
// for any thread count (and for the single-threaded path on short inputs).
// The two agree to rounding, not bitwise.

#include <cstddef>
#include <span>

namespace qbg::kernels {

inline constexpr std::size_t kChunk = 4096;
/// Inputs shorter than this run the parallel code path on one thread.
inline constexpr std::size_t kParallelThreshold = 2 * kChunk;

namespace serial {

/// out[i] = log_deg[i] - sum_n coeffs[n-1] * (levels[i] - center)^n (Horner).
void polynomial_log_weights(std::span<const double> levels, std::span<const double> log_deg,
                            std::span<const double> coeffs, double center, std::span<double> out);

/// ln sum_i exp(x[i]) with max shift. -inf entries contribute nothing; the
/// result is -inf when every entry is -inf.
double log_sum_exp(std::span<const double> x);

/// out[i] = exp(x[i] - m) / sum_j exp(x[j] - m) with m = max x; returns
/// log_sum_exp(x). The shift never passes through the rounded log-sum, so the
/// output sums to one within a few ulps even for huge |x|. Requires at least
/// one finite entry.
double softmax(std::span<const double> x, std::span<double> out);

/// out[n-1] = sum_i probs[i] * (levels[i] - center)^n for n = 1..out.size().
void power_sums(std::span<const double> probs, std::span<const double> levels, double center,
                std::span<double> out);

/// Row-major N x N matrix, N = means.size():
/// out[j*N + k] = sum_i probs[i] (E_i^(j+1) - means[j]) (E_i^(k+1) - means[k]).
void monomial_covariance(std::span<const double> probs, std::span<const double> levels,
                         std::span<const double> means, std::span<double> out);

}  // namespace serial

namespace parallel {

void polynomial_log_weights(std::span<const double> levels, std::span<const double> log_deg,
                            std::span<const double> coeffs, double center, std::span<double> out);
double log_sum_exp(std::span<const double> x);
double softmax(std::span<const double> x, std::span<double> out);
void power_sums(std::span<const double> probs, std::span<const double> levels, double center,
                std::span<double> out);
void monomial_covariance(std::span<const double> probs, std::span<const double> levels,
                         std::span<const double> means, std::span<double> out);

}  // namespace parallel

}  // namespace qbg::kernels
