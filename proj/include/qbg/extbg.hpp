#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qbg/spectrum.hpp"

namespace qbg {

/// Largest truncation order accepted by operations that need binomial
/// coefficients or the multiplier mapping.
inline constexpr std::size_t kMaxOrder = 20;

/// Raw Lagrange multipliers (beta_1, ..., beta_N) of exp(-sum_n beta_n E^n).
/// The normalization multiplier is never stored; it is ln Z.
class MultiplierVector {
 public:
  explicit MultiplierVector(std::vector<double> coeffs);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t order() const noexcept { return coeffs_.size(); }
  /// 1-based, matching the multiplier's power of E.
  double coeff(std::size_t n) const { return coeffs_.at(n - 1); }

  bool operator==(const MultiplierVector&) const = default;

 private:
  std::vector<double> coeffs_;
};

/// Multipliers of exp(-sum_n c_n (E - center)^n).
class CenteredMultiplierVector {
 public:
  CenteredMultiplierVector(std::vector<double> coeffs, double center);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t order() const noexcept { return coeffs_.size(); }
  double coeff(std::size_t n) const { return coeffs_.at(n - 1); }
  double center() const noexcept { return center_; }

  bool operator==(const CenteredMultiplierVector&) const = default;

 private:
  std::vector<double> coeffs_;
  double center_;
};

/// Moments mu_1..mu_N (raw <E^n> or central, depending on the producer).
class MomentVector {
 public:
  explicit MomentVector(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t order() const noexcept { return values_.size(); }
  double value(std::size_t n) const { return values_.at(n - 1); }

  bool operator==(const MomentVector&) const = default;

 private:
  std::vector<double> values_;
};

/// Quadratic correction exp(-beta E - delta (beta E)^2).
struct ClaytonParams {
  ClaytonParams(double beta, double delta);

  double beta;
  double delta;
};

double log_partition(const EnergySpectrum& spectrum, const MultiplierVector& m);
WeightedDistribution ext_distribution(const EnergySpectrum& spectrum, const MultiplierVector& m);
/// Same family evaluated directly in the centered form; ln Z differs from the
/// raw form by the constant shift returned by uncenter_multipliers.
WeightedDistribution ext_distribution(const EnergySpectrum& spectrum,
                                      const CenteredMultiplierVector& c);

/// -sum P ln P with 0 ln 0 = 0.
double bg_entropy(const Distribution& dist);

MomentVector raw_moments(const Distribution& dist, const EnergySpectrum& spectrum,
                         std::size_t order);
/// <(E - mu_1)^n>; the first entry is exactly zero.
MomentVector central_moments(const Distribution& dist, const EnergySpectrum& spectrum,
                             std::size_t order);

/// Exact C(n, k) for n <= kMaxOrder.
std::uint64_t binomial(std::size_t n, std::size_t k);

struct UncenteredMultipliers {
  MultiplierVector multipliers;
  /// The E^0 term sum_n c_n (-center)^n, absorbed by normalization.
  double constant_shift;
};

UncenteredMultipliers uncenter_multipliers(const CenteredMultiplierVector& c);
CenteredMultiplierVector center_multipliers(const MultiplierVector& m, double center);

/// (beta, delta * beta^2).
MultiplierVector clayton_multipliers(const ClaytonParams& p);

}  // namespace qbg
