#include "qbg/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbg/error.hpp"
#include "qbg/io.hpp"

namespace qbg {
namespace {

void require_order(std::size_t order) {
  if (order < 1) throw Error(ErrorCode::InvalidParameter, "order must be at least 1");
  if (order > kMaxOrder)
    throw Error(ErrorCode::OrderTooLarge,
                "order " + std::to_string(order) + " exceeds " + std::to_string(kMaxOrder));
}

std::vector<double> mapped_coeffs(double deficit, double beta, std::size_t order) {
  std::vector<double> coeffs(order);
  const double ratio = deficit * beta;
  double power = beta;  // (1-q)^(n-1) beta^n
  for (std::size_t n = 1; n <= order; ++n) {
    coeffs[n - 1] = power / static_cast<double>(n);
    power = power * ratio;
  }
  return coeffs;
}

}  // namespace

MultiplierVector q_to_multipliers(const QParams& params, std::size_t order) {
  require_order(order);
  const double deficit = params.is_boltzmann() ? 0.0 : params.deficit();
  return MultiplierVector(mapped_coeffs(deficit, params.beta(), order));
}

std::optional<QParams> multipliers_to_q(const MultiplierVector& m, double tol) {
  const double beta = m.coeff(1);
  if (beta == 0.0)
    throw Error(ErrorCode::ZeroLeadingMultiplier, "beta_1 must be nonzero to define a temperature");
  if (beta < 0.0) return std::nullopt;
  const double deficit = m.order() >= 2 ? 2.0 * m.coeff(2) / (beta * beta) : 0.0;
  if (!std::isfinite(deficit)) return std::nullopt;

  const auto predicted = mapped_coeffs(deficit, beta, m.order());
  for (std::size_t n = 3; n <= m.order(); ++n) {
    const double want = predicted[n - 1];
    const double err = std::abs(m.coeff(n) - want);
    const bool ok = std::abs(want) < 1e-300 ? err <= 1e-12 : err <= tol * std::abs(want);
    if (!ok) return std::nullopt;
  }
  return QParams::from_deficit(deficit, beta);
}

double clayton_to_q(double delta) { return 1.0 - 2.0 * delta; }

double convergence_domain_ratio(const EnergySpectrum& spectrum, const QParams& params) {
  if (params.is_boltzmann()) return 0.0;
  const double scale = std::abs(params.deficit() * params.beta());
  double worst = 0.0;
  for (double e : spectrum.levels()) worst = std::max(worst, scale * std::abs(e));
  return worst;
}

EquivalenceReport equivalence_report(const EnergySpectrum& spectrum, const QParams& params,
                                     std::size_t max_order) {
  require_order(max_order);
  const double ratio = convergence_domain_ratio(spectrum, params);
  if (!(ratio < 1.0))
    throw Error(ErrorCode::OutsideConvergenceDomain,
                "max |(1-q) beta E| = " + io::format_real(ratio) + " is not below 1");

  const auto exact = q_distribution(spectrum, params);
  EquivalenceReport report{{}, {}, ratio};
  for (std::size_t n = 1; n <= max_order; ++n) {
    const auto truncated = ext_distribution(spectrum, q_to_multipliers(params, n));
    report.orders.push_back(n);
    report.sup_distances.push_back(sup_distance(truncated.dist, exact.dist));
  }
  return report;
}

}  // namespace qbg
