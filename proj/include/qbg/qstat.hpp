#pragma once

#include <optional>

#include "qbg/spectrum.hpp"

namespace qbg {

/// Below this |1 - q| every q-formula is evaluated by its Boltzmann-Gibbs limit.
inline constexpr double kBoltzmannThreshold = 1e-12;

/// Entropic index q and inverse temperature beta (k = 1).
///
/// The deficit 1 - q is what every formula actually consumes. It is formed
/// from the shortest decimal representation of q, so a literal such as 0.98
/// yields a deficit of exactly double(0.02) rather than the binary residue
/// 0.020000000000000018. Parameters that originate as a deficit should be
/// built with from_deficit() so no precision is lost in the round trip.
class QParams {
 public:
  /// beta >= 0 (zero gives the uniform distribution) and q finite.
  QParams(double q, double beta);
  static QParams from_deficit(double one_minus_q, double beta);

  double q() const noexcept { return q_; }
  double beta() const noexcept { return beta_; }
  double deficit() const noexcept { return deficit_; }
  bool is_boltzmann() const noexcept;

  bool operator==(const QParams&) const = default;

 private:
  QParams(double q, double deficit, double beta);

  double q_;
  double deficit_;
  double beta_;
};

/// 1 - q evaluated on the shortest decimal that round-trips to q.
double decimal_one_minus(double q);

/// ln [1 - (1-q) beta E]^(1/(1-q)), or std::nullopt when the bracket is not
/// positive (the level is cut off and carries zero weight).
std::optional<double> q_log_weight(const QParams& params, double energy);

/// The q-exponential distribution and ln of its generalized partition
/// function. Throws AllLevelsCutOff when no level has positive weight.
WeightedDistribution q_distribution(const EnergySpectrum& spectrum, const QParams& params);

/// S_q = (1 - sum P^q) / (q - 1), falling back to -sum P ln P near q = 1.
double tsallis_entropy(const Distribution& dist, double q);

/// Tr rho^q H with each level's probability split equally over its g_i states:
/// sum_i g_i^(1-q) P_i^q E_i.
double escort_energy(const Distribution& dist, const EnergySpectrum& spectrum, double q);

/// Joint distribution of two independent systems, index i * b.size() + j.
Distribution product_distribution(const Distribution& a, const Distribution& b);

}  // namespace qbg
