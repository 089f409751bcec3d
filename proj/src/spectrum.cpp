#include "qbg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qbg/error.hpp"
#include "qbg/kernels.hpp"

namespace qbg {

EnergySpectrum::EnergySpectrum(std::vector<double> levels, std::vector<std::int64_t> degeneracies)
    : levels_(std::move(levels)), degeneracies_(std::move(degeneracies)) {
  if (levels_.empty()) throw Error(ErrorCode::EmptySpectrum, "spectrum needs at least one level");
  if (levels_.size() != degeneracies_.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(levels_.size()) + " levels but " +
                                               std::to_string(degeneracies_.size()) +
                                               " degeneracies");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!std::isfinite(levels_[i]))
      throw Error(ErrorCode::NonFiniteLevel, "level " + std::to_string(i) + " is not finite");
    if (i > 0 && !(levels_[i - 1] < levels_[i]))
      throw Error(ErrorCode::UnsortedLevels,
                  "level " + std::to_string(i) + " does not exceed its predecessor");
    if (degeneracies_[i] < 1)
      throw Error(ErrorCode::NonPositiveDegeneracy,
                  "degeneracy of level " + std::to_string(i) + " is " +
                      std::to_string(degeneracies_[i]));
  }
  log_degeneracies_.reserve(degeneracies_.size());
  for (auto g : degeneracies_) log_degeneracies_.push_back(std::log(static_cast<double>(g)));
}

std::int64_t EnergySpectrum::state_count() const noexcept {
  return std::accumulate(degeneracies_.begin(), degeneracies_.end(), std::int64_t{0});
}

EnergySpectrum make_spectrum(std::vector<double> levels, std::vector<std::int64_t> degeneracies) {
  return EnergySpectrum(std::move(levels), std::move(degeneracies));
}

double trace_of(const EnergySpectrum& spectrum, std::span<const double> per_level_values) {
  if (per_level_values.size() != spectrum.size())
    throw Error(ErrorCode::LengthMismatch, "trace_of: value count differs from level count");
  double sum = 0.0;
  const auto g = spectrum.degeneracies();
  for (std::size_t i = 0; i < per_level_values.size(); ++i)
    sum += static_cast<double>(g[i]) * per_level_values[i];
  return sum;
}

EnergySpectrum rescale(const EnergySpectrum& spectrum, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw Error(ErrorCode::NonPositiveScale, "scale must be positive and finite");
  std::vector<double> levels(spectrum.levels().begin(), spectrum.levels().end());
  for (double& e : levels) e /= scale;
  return EnergySpectrum(std::move(levels), {spectrum.degeneracies().begin(),
                                            spectrum.degeneracies().end()});
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorCode::InvalidDistribution, "empty probability vector");
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i]))
      throw Error(ErrorCode::InvalidDistribution,
                  "entry " + std::to_string(i) + " is negative or not finite");
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance)
    throw Error(ErrorCode::InvalidDistribution, "probabilities do not sum to one");
}

double sup_distance(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::LengthMismatch, "sup_distance: distributions differ in length");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

WeightedDistribution normalize_log_weights(std::span<const double> log_weights) {
  if (std::any_of(log_weights.begin(), log_weights.end(),
                  [](double w) { return std::isnan(w) || w == std::numeric_limits<double>::infinity(); }))
    throw Error(ErrorCode::InvalidParameter, "log-weights must be finite or -inf");
  if (std::none_of(log_weights.begin(), log_weights.end(), [](double w) { return std::isfinite(w); }))
    throw Error(ErrorCode::InvalidParameter, "no level carries a finite weight");
  std::vector<double> probs(log_weights.size());
  const double log_z = kernels::parallel::softmax(log_weights, probs);
  return {Distribution(std::move(probs)), log_z};
}

}  // namespace qbg
