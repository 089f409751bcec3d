#include "qbg/qstat.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qbg/error.hpp"
#include "qbg/extbg.hpp"

namespace qbg {
namespace {

__extension__ typedef __int128 int128;

std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  std::string out;
  while (v != 0) {
    const int digit = static_cast<int>(v % 10);
    out.insert(out.begin(), static_cast<char>('0' + (negative ? -digit : digit)));
    v /= 10;
  }
  if (negative) out.insert(out.begin(), '-');
  return out;
}

void require_valid(double q, double beta) {
  if (!std::isfinite(q)) throw Error(ErrorCode::InvalidParameter, "q must be finite");
  if (!std::isfinite(beta) || beta < 0.0)
    throw Error(ErrorCode::InvalidParameter, "beta must be finite and non-negative");
}

}  // namespace

double decimal_one_minus(double q) {
  if (!std::isfinite(q)) return 1.0 - q;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, q, std::chars_format::scientific);
  std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));

  const bool negative = text.front() == '-';
  if (negative) text.remove_prefix(1);
  const auto e_pos = text.find('e');
  std::string digits;
  for (char c : text.substr(0, e_pos))
    if (c != '.') digits.push_back(c);
  std::string_view exp_text = text.substr(e_pos + 1);
  if (exp_text.front() == '+') exp_text.remove_prefix(1);
  int exponent = 0;
  std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);

  // q = +-mantissa * 10^scale with at most 17 mantissa digits.
  const int scale = exponent - static_cast<int>(digits.size()) + 1;
  // Integers are exact in binary already; below 1e-20 the decimal reading
  // cannot change the correctly rounded 1 - q.
  if (scale >= 0 || scale < -36) return 1.0 - q;

  int128 mantissa = 0;
  for (char c : digits) mantissa = mantissa * 10 + (c - '0');
  if (negative) mantissa = -mantissa;
  int128 one = 1;
  for (int i = 0; i < -scale; ++i) one *= 10;

  const std::string exact = to_string(one - mantissa) + "e" + std::to_string(scale);
  double out = 0.0;
  std::from_chars(exact.data(), exact.data() + exact.size(), out);
  return out;
}

QParams::QParams(double q, double deficit, double beta) : q_(q), deficit_(deficit), beta_(beta) {}

QParams::QParams(double q, double beta) : QParams(q, 0.0, beta) {
  require_valid(q, beta);
  deficit_ = decimal_one_minus(q);
}

QParams QParams::from_deficit(double one_minus_q, double beta) {
  require_valid(one_minus_q, beta);
  return QParams(1.0 - one_minus_q, one_minus_q, beta);
}

bool QParams::is_boltzmann() const noexcept { return std::abs(deficit_) < kBoltzmannThreshold; }

std::optional<double> q_log_weight(const QParams& params, double energy) {
  if (params.is_boltzmann()) return -(params.beta() * energy);
  const double x = params.deficit() * params.beta() * energy;
  if (!(x < 1.0)) return std::nullopt;
  return std::log1p(-x) / params.deficit();
}

WeightedDistribution q_distribution(const EnergySpectrum& spectrum, const QParams& params) {
  const auto levels = spectrum.levels();
  const auto log_deg = spectrum.log_degeneracies();
  std::vector<double> log_weights(spectrum.size());
  bool any_support = false;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (const auto w = q_log_weight(params, levels[i])) {
      log_weights[i] = log_deg[i] + *w;
      any_support = true;
    } else {
      log_weights[i] = -std::numeric_limits<double>::infinity();
    }
  }
  if (!any_support)
    throw Error(ErrorCode::AllLevelsCutOff, "every level lies beyond the q-exponential cutoff");
  return normalize_log_weights(log_weights);
}

double tsallis_entropy(const Distribution& dist, double q) {
  if (!std::isfinite(q)) throw Error(ErrorCode::InvalidParameter, "q must be finite");
  const double q_minus_one = q - 1.0;
  if (std::abs(q_minus_one) < kBoltzmannThreshold) return bg_entropy(dist);
  // sum P^q - 1 = sum P (P^(q-1) - 1); expm1 keeps this accurate near q = 1.
  double sum = 0.0;
  for (double p : dist.probs())
    if (p > 0.0) sum += p * std::expm1(q_minus_one * std::log(p));
  return -sum / q_minus_one;
}

double escort_energy(const Distribution& dist, const EnergySpectrum& spectrum, double q) {
  if (dist.size() != spectrum.size())
    throw Error(ErrorCode::LengthMismatch, "escort_energy: distribution and spectrum differ");
  const auto levels = spectrum.levels();
  const auto g = spectrum.degeneracies();
  double sum = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (dist[i] == 0.0) continue;
    sum += std::pow(static_cast<double>(g[i]), 1.0 - q) * std::pow(dist[i], q) * levels[i];
  }
  return sum;
}

Distribution product_distribution(const Distribution& a, const Distribution& b) {
  std::vector<double> joint;
  joint.reserve(a.size() * b.size());
  for (double pa : a.probs())
    for (double pb : b.probs()) joint.push_back(pa * pb);
  return Distribution(std::move(joint));
}

}  // namespace qbg
