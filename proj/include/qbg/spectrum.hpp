#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qbg {

/// A finite list of energy levels with integer degeneracies. Levels are
/// strictly increasing and finite; every degeneracy is at least one.
/// Energies may be negative since the origin of the energy scale is free.
class EnergySpectrum {
 public:
  EnergySpectrum(std::vector<double> levels, std::vector<std::int64_t> degeneracies);

  std::span<const double> levels() const noexcept { return levels_; }
  std::span<const std::int64_t> degeneracies() const noexcept { return degeneracies_; }
  /// ln g_i, precomputed so weight kernels can work purely in log space.
  std::span<const double> log_degeneracies() const noexcept { return log_degeneracies_; }

  std::size_t size() const noexcept { return levels_.size(); }
  double min_energy() const noexcept { return levels_.front(); }
  double max_energy() const noexcept { return levels_.back(); }
  /// Total number of states, sum of g_i.
  std::int64_t state_count() const noexcept;

  bool operator==(const EnergySpectrum&) const = default;

 private:
  std::vector<double> levels_;
  std::vector<std::int64_t> degeneracies_;
  std::vector<double> log_degeneracies_;
};

EnergySpectrum make_spectrum(std::vector<double> levels, std::vector<std::int64_t> degeneracies);

/// Tr f(H) in the energy representation: sum_i g_i * values[i].
double trace_of(const EnergySpectrum& spectrum, std::span<const double> per_level_values);

/// Divides every level by `scale`; degeneracies are unchanged.
EnergySpectrum rescale(const EnergySpectrum& spectrum, double scale);

/// Per-level probabilities with degeneracy already folded in: probs[i] is the
/// total probability of level i, not of a single state.
class Distribution {
 public:
  static constexpr double kNormalizationTolerance = 1e-12;

  /// Throws InvalidDistribution on a negative/non-finite entry or when the
  /// entries do not sum to one within kNormalizationTolerance.
  explicit Distribution(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<double> probs_;
};

/// max_i |a_i - b_i|.
double sup_distance(const Distribution& a, const Distribution& b);

struct WeightedDistribution {
  Distribution dist;
  double log_partition;
};

/// Normalizes unnormalized log-weights (ln g_i already included) with a
/// max-shifted log-sum-exp. Entries equal to -inf receive probability exactly
/// zero; at least one entry must be finite.
WeightedDistribution normalize_log_weights(std::span<const double> log_weights);

}  // namespace qbg
