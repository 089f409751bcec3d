#include "qbg/maxent.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include "qbg/kernels.hpp"

namespace qbg {
namespace {

void require_matching(std::size_t lhs, std::size_t rhs, const char* what) {
  if (lhs != rhs)
    throw Error(ErrorCode::OrderMismatch, std::string(what) + ": order " + std::to_string(lhs) +
                                              " vs " + std::to_string(rhs));
}

// Everything one Newton iteration needs at a point.
struct DualState {
  double objective;
  std::vector<double> moments;
  WeightedDistribution weighted;
};

DualState evaluate(const EnergySpectrum& spectrum, std::span<const double> coeffs,
                   std::span<const double> targets) {
  auto weighted = ext_distribution(spectrum, MultiplierVector({coeffs.begin(), coeffs.end()}));
  std::vector<double> moments(coeffs.size());
  kernels::parallel::power_sums(weighted.dist.probs(), spectrum.levels(), 0.0, moments);
  double objective = weighted.log_partition;
  for (std::size_t n = 0; n < coeffs.size(); ++n) objective += coeffs[n] * targets[n];
  return {objective, std::move(moments), std::move(weighted)};
}

constexpr int kPolishSteps = 3;

std::string scientific(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// The objective at a trial point, or nullopt when the exponents overflow.
std::optional<double> try_objective(const EnergySpectrum& spectrum, std::span<const double> coeffs,
                                    std::span<const double> targets) {
  try {
    const double z = log_partition(spectrum, MultiplierVector({coeffs.begin(), coeffs.end()}));
    double objective = z;
    for (std::size_t n = 0; n < coeffs.size(); ++n) objective += coeffs[n] * targets[n];
    if (!std::isfinite(objective)) return std::nullopt;
    return objective;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Change of the dual objective from the current point along `step` times the
// Newton direction. Writing d_i for the direction polynomial at level i and
// g for the moment residual,
//   dL = ln sum_i P_i e^(-t d_i) + t dir . target
//      = sum_i P_i phi(t d_i) - t dir . g + psi(x),   x = sum_i P_i expm1(-t d_i)
// with phi(y) = expm1(-y) + y and psi(x) = log1p(x) - x. Every term is second
// order or carries the residual, so the difference keeps its relative
// precision long after L itself stops resolving it. Large steps fall back to
// differencing two full evaluations.
class ObjectiveChange {
 public:
  ObjectiveChange(const EnergySpectrum& spectrum, const Distribution& dist,
                  const Eigen::VectorXd& direction, const Eigen::VectorXd& residual)
      : spectrum_(spectrum), probs_(dist.probs()), slope_residual_(direction.dot(residual)) {
    const std::vector<double> zeros(spectrum.size(), 0.0);
    poly_.resize(spectrum.size());
    kernels::parallel::polynomial_log_weights(
        spectrum.levels(), zeros, {direction.data(), static_cast<std::size_t>(direction.size())},
        0.0, poly_);
    for (double& d : poly_) {
      d = -d;
      largest_ = std::max(largest_, std::abs(d));
    }
  }

  std::optional<double> at(double step, double current_objective, std::span<const double> trial,
                           std::span<const double> targets) const {
    if (!(step * largest_ <= 0.5)) {
      const auto value = try_objective(spectrum_, trial, targets);
      if (!value) return std::nullopt;
      return *value - current_objective;
    }
    double second_order = 0.0;
    double x = 0.0;
    for (std::size_t i = 0; i < poly_.size(); ++i) {
      const double y = step * poly_[i];
      const double e = std::expm1(-y);
      x += probs_[i] * e;
      second_order += probs_[i] * (e + y);
    }
    return second_order - step * slope_residual_ + (std::log1p(x) - x);
  }

 private:
  const EnergySpectrum& spectrum_;
  std::span<const double> probs_;
  double slope_residual_;
  std::vector<double> poly_;
  double largest_ = 0.0;
};

Eigen::MatrixXd covariance(const EnergySpectrum& spectrum, const Distribution& dist,
                           std::span<const double> means) {
  const auto order = static_cast<Eigen::Index>(means.size());
  Eigen::MatrixXd h(order, order);
  // Symmetric, so row- vs column-major storage does not matter.
  kernels::parallel::monomial_covariance(dist.probs(), spectrum.levels(), means,
                                         std::span<double>(h.data(), means.size() * means.size()));
  return h;
}

double sup_norm(std::span<const double> v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x));
  return worst;
}

// Raw moments of (E - center) / scale from raw moments of E.
std::vector<double> rescale_moments(std::span<const double> mu, double center, double scale) {
  const std::size_t order = mu.size();
  std::vector<double> out(order);
  for (std::size_t n = 1; n <= order; ++n) {
    double sum = 0.0;
    double shift_power = 1.0;  // (-center)^(n-k), k descending from n
    for (std::size_t k = n + 1; k-- > 0;) {
      const double mu_k = k == 0 ? 1.0 : mu[k - 1];
      sum += static_cast<double>(binomial(n, k)) * mu_k * shift_power;
      shift_power *= -center;
    }
    out[n - 1] = sum / std::pow(scale, static_cast<double>(n));
  }
  return out;
}

MultiplierVector to_raw(std::span<const double> scaled, double center, double scale) {
  std::vector<double> centered(scaled.size());
  for (std::size_t n = 1; n <= scaled.size(); ++n)
    centered[n - 1] = scaled[n - 1] / std::pow(scale, static_cast<double>(n));
  return uncenter_multipliers(CenteredMultiplierVector(std::move(centered), center)).multipliers;
}

// Factorizes H + ridge I, escalating the ridge only after a failed attempt.
std::optional<Eigen::VectorXd> newton_direction(const Eigen::MatrixXd& h, const Eigen::VectorXd& g,
                                                double ridge) {
  const auto identity = Eigen::MatrixXd::Identity(h.rows(), h.cols());
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (;;) {
    llt.compute(h + ridge * identity);
    if (llt.info() == Eigen::Success) return llt.solve(g);
    if (ridge >= SolverOptions::kMaxRidge) return std::nullopt;
    ridge = std::min(std::max(10.0 * ridge, 1e-12), SolverOptions::kMaxRidge);
  }
}

}  // namespace

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParameter, "solver tol must be positive");
  if (max_iter < 1) throw Error(ErrorCode::InvalidParameter, "max_iter must be at least 1");
  if (!(ridge >= 0.0)) throw Error(ErrorCode::InvalidParameter, "ridge must be non-negative");
  if (!(armijo_c > 0.0 && armijo_c < 1.0))
    throw Error(ErrorCode::InvalidParameter, "armijo_c must lie in (0, 1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw Error(ErrorCode::InvalidParameter, "backtrack_factor must lie in (0, 1)");
}

NotConvergedError::NotConvergedError(const std::string& detail, MultiplierVector last,
                                     SolverReport report)
    : Error(ErrorCode::NotConverged, detail), last_(std::move(last)), report_(std::move(report)) {}

double dual_objective(const EnergySpectrum& spectrum, const MultiplierVector& m,
                      const MomentVector& targets) {
  require_matching(targets.order(), m.order(), "dual_objective");
  double objective = log_partition(spectrum, m);
  for (std::size_t n = 1; n <= m.order(); ++n) objective += m.coeff(n) * targets.value(n);
  return objective;
}

std::vector<double> dual_gradient(const EnergySpectrum& spectrum, const MultiplierVector& m,
                                  const MomentVector& targets) {
  require_matching(targets.order(), m.order(), "dual_gradient");
  auto state = evaluate(spectrum, m.coeffs(), targets.values());
  for (std::size_t n = 0; n < state.moments.size(); ++n) state.moments[n] -= targets.values()[n];
  return std::move(state.moments);
}

Eigen::MatrixXd dual_hessian(const EnergySpectrum& spectrum, const MultiplierVector& m,
                             std::size_t order) {
  require_matching(order, m.order(), "dual_hessian");
  const auto weighted = ext_distribution(spectrum, m);
  std::vector<double> means(order);
  kernels::parallel::power_sums(weighted.dist.probs(), spectrum.levels(), 0.0, means);
  return covariance(spectrum, weighted.dist, means);
}

SolveResult solve_multipliers(const EnergySpectrum& spectrum, const MomentVector& targets,
                              const SolverOptions& opts) {
  opts.validate();
  const std::size_t order = targets.order();
  if (order > kMaxOrder)
    throw Error(ErrorCode::OrderTooLarge,
                "order " + std::to_string(order) + " exceeds " + std::to_string(kMaxOrder));
  if (spectrum.size() < order + 1)
    throw Error(ErrorCode::TooFewLevels, std::to_string(order) + " moments need at least " +
                                             std::to_string(order + 1) + " distinct levels");
  const double mean = targets.value(1);
  if (mean < spectrum.min_energy() || mean > spectrum.max_energy())
    throw Error(ErrorCode::InfeasibleTargets, "target mean lies outside the spectrum");
  if (order >= 2 && targets.value(2) < mean * mean)
    throw Error(ErrorCode::InfeasibleTargets, "target second moment is below the squared mean");

  const double center = 0.5 * (spectrum.min_energy() + spectrum.max_energy());
  const double scale = 0.5 * (spectrum.max_energy() - spectrum.min_energy());
  std::vector<double> scaled_levels(spectrum.levels().begin(), spectrum.levels().end());
  for (double& e : scaled_levels) e = (e - center) / scale;
  const EnergySpectrum scaled(std::move(scaled_levels),
                              {spectrum.degeneracies().begin(), spectrum.degeneracies().end()});
  const auto goal = rescale_moments(targets.values(), center, scale);

  SolverReport report;
  report.rescale_factor = scale;
  report.rescale_center = center;

  std::vector<double> beta(order, 0.0);
  std::vector<double> trial(order);
  Eigen::VectorXd residual(static_cast<Eigen::Index>(order));
  std::string failure;

  // Once the residual is within tol, a few more Newton steps are taken as
  // long as each at least halves it: on ill-conditioned spectra a small
  // moment residual still leaves visible error in the multipliers.
  int polish_left = kPolishSteps;
  for (;;) {
    const auto state = evaluate(scaled, beta, goal);
    if (report.objective_trace.empty()) report.objective_trace.push_back(state.objective);
    for (std::size_t n = 0; n < order; ++n)
      residual[static_cast<Eigen::Index>(n)] = state.moments[n] - goal[n];
    report.residual_norm = sup_norm({residual.data(), order});
    if (report.residual_norm <= opts.tol) report.converged = true;
    if (report.converged && polish_left-- == 0) break;
    if (report.iterations >= opts.max_iter) {
      failure = "iteration limit reached";
      break;
    }

    const auto direction =
        newton_direction(covariance(scaled, state.weighted.dist, state.moments), residual,
                         opts.ridge);
    if (!direction) {
      failure = "Hessian stayed singular after ridge escalation";
      break;
    }
    // The objective gradient is -residual, so its slope along the step is:
    const double slope = -residual.dot(*direction);

    const ObjectiveChange change(scaled, state.weighted.dist, *direction, residual);
    double step = 1.0;
    std::optional<double> accepted;
    while (step > std::numeric_limits<double>::epsilon()) {
      for (std::size_t n = 0; n < order; ++n)
        trial[n] = beta[n] + step * (*direction)[static_cast<Eigen::Index>(n)];
      const auto delta = change.at(step, state.objective, trial, goal);
      if (delta && *delta <= opts.armijo_c * step * slope) {
        accepted = delta;
        break;
      }
      step *= opts.backtrack_factor;
    }
    if (!accepted) {
      failure = "line search could not decrease the dual objective";
      break;
    }
    if (report.converged) {
      const auto polished = evaluate(scaled, trial, goal);
      double norm = 0.0;
      for (std::size_t n = 0; n < order; ++n)
        norm = std::max(norm, std::abs(polished.moments[n] - goal[n]));
      if (!(norm < 0.5 * report.residual_norm)) break;
    }
    beta = trial;
    report.final_step_size = step;
    report.objective_trace.push_back(report.objective_trace.back() + *accepted);
    ++report.iterations;
  }

  auto raw = to_raw(beta, center, scale);
  if (!report.converged)
    throw NotConvergedError(failure + " (residual " + scientific(report.residual_norm) + ")",
                            std::move(raw), std::move(report));
  return {std::move(raw), std::move(report)};
}

}  // namespace qbg
