#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qbg/extbg.hpp"
#include "qbg/qstat.hpp"
#include "qbg/spectrum.hpp"

namespace qbg {

/// Sup-norm distance between the order-N truncated multiplier distribution and
/// the exact q-distribution, for N = orders[i].
struct EquivalenceReport {
  std::vector<std::size_t> orders;
  std::vector<double> sup_distances;
  /// max_i |(1 - q) beta E_i|; the log series of the q-weight converges below 1.
  double domain_ratio;
};

/// beta_n = (1 - q)^(n-1) beta^n / n for n = 1..order (order <= kMaxOrder).
MultiplierVector q_to_multipliers(const QParams& params, std::size_t order);

/// Inverse of q_to_multipliers. Reads beta = beta_1 and 1 - q = 2 beta_2 /
/// beta_1^2, then accepts the candidate only if every higher coefficient is
/// reproduced within `tol` relative (absolute 1e-12 where the predicted value
/// is below 1e-300). A non-positive beta_1 never yields parameters.
std::optional<QParams> multipliers_to_q(const MultiplierVector& m, double tol);

/// q = 1 - 2 delta.
double clayton_to_q(double delta);

double convergence_domain_ratio(const EnergySpectrum& spectrum, const QParams& params);

/// Throws OutsideConvergenceDomain when the domain ratio is >= 1 and
/// OrderTooLarge when max_order exceeds kMaxOrder.
EquivalenceReport equivalence_report(const EnergySpectrum& spectrum, const QParams& params,
                                     std::size_t max_order);

}  // namespace qbg
