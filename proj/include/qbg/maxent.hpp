#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "qbg/error.hpp"
#include "qbg/extbg.hpp"
#include "qbg/spectrum.hpp"

namespace qbg {

struct SolverOptions {
  /// Sup norm of the moment residual, measured on the rescaled spectrum.
  double tol = 1e-10;
  int max_iter = 200;
  /// Added to the Hessian diagonal at every step; escalated x10 (from at
  /// least 1e-12) up to kMaxRidge while the factorization fails.
  double ridge = 1e-12;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;

  static constexpr double kMaxRidge = 1e-6;

  /// Throws InvalidParameter.
  void validate() const;
};

struct SolverReport {
  bool converged = false;
  int iterations = 0;
  double residual_norm = 0.0;
  double final_step_size = 0.0;
  /// Energies are mapped to (E - rescale_center) / rescale_factor in [-1, 1].
  double rescale_factor = 1.0;
  double rescale_center = 0.0;
  /// Dual objective at the start point and after every accepted step, in
  /// rescaled coordinates. Non-increasing by construction.
  std::vector<double> objective_trace;
};

struct SolveResult {
  MultiplierVector multipliers;
  SolverReport report;
};

/// Thrown by solve_multipliers when the residual never reaches tol. Carries
/// the last iterate and the report so callers can inspect how close it got.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& detail, MultiplierVector last, SolverReport report);

  const MultiplierVector& multipliers() const noexcept { return last_; }
  const SolverReport& report() const noexcept { return report_; }

 private:
  MultiplierVector last_;
  SolverReport report_;
};

/// ln Z(beta) + sum_n beta_n target_n. Strictly convex in beta on any
/// spectrum with more distinct levels than multipliers.
double dual_objective(const EnergySpectrum& spectrum, const MultiplierVector& m,
                      const MomentVector& targets);

/// Moment residual mu_n(beta) - target_n. This is the negated gradient of
/// dual_objective.
std::vector<double> dual_gradient(const EnergySpectrum& spectrum, const MultiplierVector& m,
                                  const MomentVector& targets);

/// Cov(E^j, E^k) under ext_distribution(spectrum, m): the Hessian of
/// dual_objective, symmetric positive semidefinite.
Eigen::MatrixXd dual_hessian(const EnergySpectrum& spectrum, const MultiplierVector& m,
                             std::size_t order);

/// Finds the multipliers whose extended distribution reproduces the raw
/// moments `targets`, by damped Newton on dual_objective starting from the
/// uniform distribution.
///
/// Throws OrderTooLarge, TooFewLevels (fewer than order + 1 levels),
/// InfeasibleTargets (mean outside the spectrum or negative variance) and
/// NotConvergedError.
SolveResult solve_multipliers(const EnergySpectrum& spectrum, const MomentVector& targets,
                              const SolverOptions& opts = {});

}  // namespace qbg
