#include "qbg/extbg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qbg/error.hpp"
#include "qbg/kernels.hpp"

namespace qbg {
namespace {

void require_finite(std::span<const double> values, const char* what) {
  if (values.empty()) throw Error(ErrorCode::InvalidParameter, std::string(what) + " is empty");
  for (double v : values)
    if (!std::isfinite(v))
      throw Error(ErrorCode::InvalidParameter, std::string(what) + " has a non-finite entry");
}

void require_order(std::size_t order) {
  if (order > kMaxOrder)
    throw Error(ErrorCode::OrderTooLarge,
                "order " + std::to_string(order) + " exceeds " + std::to_string(kMaxOrder));
}

void require_aligned(const Distribution& dist, const EnergySpectrum& spectrum) {
  if (dist.size() != spectrum.size())
    throw Error(ErrorCode::LengthMismatch, "distribution and spectrum differ in length");
}

std::vector<double> log_weights(const EnergySpectrum& spectrum, std::span<const double> coeffs,
                                double center) {
  std::vector<double> out(spectrum.size());
  kernels::parallel::polynomial_log_weights(spectrum.levels(), spectrum.log_degeneracies(),
                                            coeffs, center, out);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!std::isfinite(out[i]))
      throw Error(ErrorCode::NonFiniteExponent,
                  "exponent at level " + std::to_string(i) + " is not finite");
  return out;
}

using BinomialTable = std::array<std::array<std::uint64_t, kMaxOrder + 1>, kMaxOrder + 1>;

constexpr BinomialTable make_binomials() {
  BinomialTable t{};
  for (std::size_t n = 0; n <= kMaxOrder; ++n) {
    t[n][0] = 1;
    for (std::size_t k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
  }
  return t;
}

constexpr BinomialTable kBinomials = make_binomials();

}  // namespace

MultiplierVector::MultiplierVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  require_finite(coeffs_, "multiplier vector");
}

CenteredMultiplierVector::CenteredMultiplierVector(std::vector<double> coeffs, double center)
    : coeffs_(std::move(coeffs)), center_(center) {
  require_finite(coeffs_, "centered multiplier vector");
  if (!std::isfinite(center_)) throw Error(ErrorCode::InvalidParameter, "center is not finite");
}

MomentVector::MomentVector(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_, "moment vector");
}

ClaytonParams::ClaytonParams(double beta_, double delta_) : beta(beta_), delta(delta_) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorCode::InvalidParameter, "Clayton beta must be positive and finite");
  if (!std::isfinite(delta)) throw Error(ErrorCode::InvalidParameter, "delta must be finite");
}

double log_partition(const EnergySpectrum& spectrum, const MultiplierVector& m) {
  return kernels::parallel::log_sum_exp(log_weights(spectrum, m.coeffs(), 0.0));
}

WeightedDistribution ext_distribution(const EnergySpectrum& spectrum, const MultiplierVector& m) {
  return normalize_log_weights(log_weights(spectrum, m.coeffs(), 0.0));
}

WeightedDistribution ext_distribution(const EnergySpectrum& spectrum,
                                      const CenteredMultiplierVector& c) {
  return normalize_log_weights(log_weights(spectrum, c.coeffs(), c.center()));
}

double bg_entropy(const Distribution& dist) {
  double sum = 0.0;
  for (double p : dist.probs())
    if (p > 0.0) sum -= p * std::log(p);
  return sum;
}

MomentVector raw_moments(const Distribution& dist, const EnergySpectrum& spectrum,
                         std::size_t order) {
  require_aligned(dist, spectrum);
  if (order < 1) throw Error(ErrorCode::InvalidParameter, "moment order must be at least 1");
  std::vector<double> mu(order);
  kernels::parallel::power_sums(dist.probs(), spectrum.levels(), 0.0, mu);
  return MomentVector(std::move(mu));
}

MomentVector central_moments(const Distribution& dist, const EnergySpectrum& spectrum,
                             std::size_t order) {
  const double mean = raw_moments(dist, spectrum, 1).value(1);
  std::vector<double> mu(order);
  kernels::parallel::power_sums(dist.probs(), spectrum.levels(), mean, mu);
  mu[0] = 0.0;
  return MomentVector(std::move(mu));
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  require_order(n);
  return k > n ? 0 : kBinomials[n][k];
}

UncenteredMultipliers uncenter_multipliers(const CenteredMultiplierVector& c) {
  const std::size_t order = c.order();
  require_order(order);
  const double shift = -c.center();
  // beta_k = sum_{n >= k} C(n, k) c_n (-center)^(n - k); k = 0 is the shift.
  std::vector<double> raw(order + 1, 0.0);
  for (std::size_t k = 0; k <= order; ++k) {
    const std::size_t first = std::max<std::size_t>(k, 1);
    double power = (k == 0) ? shift : 1.0;  // shift^(first - k)
    for (std::size_t n = first; n <= order; ++n) {
      raw[k] += static_cast<double>(kBinomials[n][k]) * c.coeff(n) * power;
      power *= shift;
    }
  }
  const double constant = raw[0];
  raw.erase(raw.begin());
  return {MultiplierVector(std::move(raw)), constant};
}

CenteredMultiplierVector center_multipliers(const MultiplierVector& m, double center) {
  const std::size_t order = m.order();
  require_order(order);
  std::vector<double> centered(order, 0.0);
  for (std::size_t n = 1; n <= order; ++n) {
    double power = 1.0;
    for (std::size_t k = n; k <= order; ++k) {
      if (k > n) power *= center;
      centered[n - 1] += static_cast<double>(kBinomials[k][n]) * m.coeff(k) * power;
    }
  }
  return CenteredMultiplierVector(std::move(centered), center);
}

MultiplierVector clayton_multipliers(const ClaytonParams& p) {
  return MultiplierVector({p.beta, p.delta * p.beta * p.beta});
}

}  // namespace qbg
