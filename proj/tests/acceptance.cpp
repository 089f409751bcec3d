// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qbg/cli.hpp"
#include "qbg/equivalence.hpp"
#include "qbg/error.hpp"
#include "qbg/extbg.hpp"
#include "qbg/io.hpp"
#include "qbg/maxent.hpp"
#include "qbg/qstat.hpp"

using namespace qbg;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

template <typename T>
std::vector<T> vec(std::span<const T> s) {
  return {s.begin(), s.end()};
}

double sup_norm(const std::vector<double>& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x));
  return worst;
}

EnergySpectrum random_spectrum(std::mt19937_64& rng, std::size_t n, double lo, double hi,
                               std::int64_t max_g) {
  auto levels = oracle::random_levels(rng, n, lo, hi);
  auto degeneracies = oracle::random_degeneracies(rng, n, max_g);
  return make_spectrum(std::move(levels), std::move(degeneracies));
}

std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// 1. Clayton multipliers for beta = 1, delta = 0.01, and the q = 0.98 map.
Verdict clayton_reproduction() {
  const auto clayton = clayton_multipliers(ClaytonParams(1.0, 0.01));
  const auto mapped = q_to_multipliers(QParams(0.98, 1.0), 2);
  const bool exact = vec(clayton.coeffs()) == std::vector<double>{1.0, 0.01};
  const bool same = clayton == mapped && clayton_to_q(0.01) == 0.98;
  return {exact && same, "clayton=(" + io::format_real(clayton.coeff(1)) + "," +
                             io::format_real(clayton.coeff(2)) + ") map=(" +
                             io::format_real(mapped.coeff(1)) + "," +
                             io::format_real(mapped.coeff(2)) + ")"};
}

// 2. Truncation error on {0..5}, q = 0.98, beta = 1.
Verdict equivalence_convergence() {
  const auto s = make_spectrum({0, 1, 2, 3, 4, 5}, std::vector<std::int64_t>(6, 1));
  const QParams params(0.98, 1.0);
  const auto report = equivalence_report(s, params, 12);

  std::vector<double> w;
  for (double e : s.levels()) w.push_back(oracle::q_weight(0.98, 1.0, e));
  const auto exact = oracle::normalize(w, vec(s.degeneracies()));
  double oracle_gap = 0.0;
  bool decreasing = true;
  for (std::size_t i = 0; i < report.orders.size(); ++i) {
    const auto m = q_to_multipliers(params, report.orders[i]);
    const auto approx = ext_distribution(s, m).dist;
    const double want = oracle::sup_diff(vec(approx.probs()), exact);
    oracle_gap = std::max(oracle_gap, std::abs(want - report.sup_distances[i]));
    if (i > 0 && !(report.sup_distances[i] < report.sup_distances[i - 1])) decreasing = false;
  }
  const double d2 = report.sup_distances[1];
  const double d12 = report.sup_distances[11];
  const bool pass = d2 <= 1e-4 && d12 <= 1e-12 && decreasing && oracle_gap <= 1e-15 &&
                    std::abs(report.domain_ratio - 0.1) < 1e-15;
  return {pass, "ratio=" + io::format_real(report.domain_ratio) + " d(N=2)=" + sci(d2) +
                    " (need <=1e-4) d(N=12)=" + sci(d12) + " (need <=1e-12) decreasing=" +
                    (decreasing ? "yes" : "no") + " oracle_gap=" + sci(oracle_gap)};
}

// 3. S_q(AxB) = S_q(A) + S_q(B) + (1-q) S_q(A) S_q(B).
Verdict pseudo_additivity() {
  std::mt19937_64 rng(301);
  std::uniform_int_distribution<std::size_t> size(1, 40);
  double worst = 0.0;
  int checked = 0;
  for (double q : {0.5, 0.9, 1.5, 2.0, 3.0}) {
    for (int pair = 0; pair < 100; ++pair) {
      const Distribution a(oracle::random_probs(rng, size(rng), pair % 3 == 0));
      const Distribution b(oracle::random_probs(rng, size(rng), pair % 5 == 0));
      const double sa = tsallis_entropy(a, q);
      const double sb = tsallis_entropy(b, q);
      const double sab = tsallis_entropy(product_distribution(a, b), q);
      worst = std::max(worst, std::abs(sab - (sa + sb + (1.0 - q) * sa * sb)));
      ++checked;
    }
  }
  return {worst <= 1e-12, std::to_string(checked) + " pairs, max defect=" + sci(worst) +
                              " (need <=1e-12)"};
}

// 4. q = 1 +- 1e-8 against the Boltzmann distribution.
Verdict boltzmann_limit() {
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> emax(0.1, 100.0), frac(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(2, 200);
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double top = emax(rng);
    const auto s = random_spectrum(rng, size(rng), 0.0, top, 5);
    const double beta = 20.0 * frac(rng) / s.max_energy();
    std::vector<double> w;
    for (double e : s.levels()) w.push_back(std::exp(-beta * e));
    const auto exact = oracle::normalize(w, vec(s.degeneracies()));
    for (double q : {1.0 - 1e-8, 1.0 + 1e-8}) {
      const auto p = q_distribution(s, QParams(q, beta)).dist;
      worst = std::max(worst, oracle::sup_diff(vec(p.probs()), exact));
      ++checked;
    }
  }
  return {worst <= 1e-6, std::to_string(checked) + " cases, max sup distance=" + sci(worst) +
                             " (need <=1e-6)"};
}

// 5. Recover generating multipliers from their own moments.
Verdict solver_round_trip() {
  std::mt19937_64 rng(501);
  std::uniform_int_distribution<std::size_t> size(5, 50);
  std::uniform_real_distribution<double> lo(-5.0, 5.0), width(0.5, 10.0);
  double worst_scaled = 0.0, worst_raw = 0.0;
  int max_iter = 0, failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t order = 1 + trial % 4;
    const double a = lo(rng);
    const double b = a + width(rng);
    const auto s = random_spectrum(rng, size(rng), a, b, 3);
    const double center = 0.5 * (s.min_energy() + s.max_energy());
    const double scale = 0.5 * (s.max_energy() - s.min_energy());
    const auto scaled_truth = uniform_vector(rng, order, 1.0);
    std::vector<double> centered(order);
    for (std::size_t n = 1; n <= order; ++n)
      centered[n - 1] = scaled_truth[n - 1] / std::pow(scale, double(n));
    const auto truth = uncenter_multipliers(CenteredMultiplierVector(centered, center)).multipliers;
    // The generating distribution is evaluated where its coefficients live.
    std::vector<double> unit(s.levels().begin(), s.levels().end());
    for (double& e : unit) e = (e - center) / scale;
    const auto p = ext_distribution(make_spectrum(unit, vec(s.degeneracies())),
                                    MultiplierVector(scaled_truth))
                       .dist;
    const auto targets = raw_moments(p, s, order);
    try {
      const auto r = solve_multipliers(s, targets);
      if (!r.report.converged || r.report.iterations > 50) ++failures;
      max_iter = std::max(max_iter, r.report.iterations);
      const auto back = center_multipliers(r.multipliers, center);
      for (std::size_t n = 1; n <= order; ++n) {
        worst_scaled = std::max(
            worst_scaled, std::abs(back.coeff(n) * std::pow(scale, double(n)) - scaled_truth[n - 1]));
        worst_raw = std::max(worst_raw, std::abs(r.multipliers.coeff(n) - truth.coeff(n)));
      }
    } catch (const Error&) {
      ++failures;
    }
  }
  // Coefficients are compared in the rescaled coordinates they were drawn in;
  // the raw-coordinate error is reported for information.
  const bool pass = failures == 0 && worst_scaled <= 1e-7;
  return {pass, "50 instances, unconverged=" + std::to_string(failures) + " max_iter=" +
                    std::to_string(max_iter) + " max error rescaled=" + sci(worst_scaled) +
                    " (need <=1e-7, <=50 iterations) raw=" + sci(worst_raw)};
}

// 6. Gradient and Hessian against central differences of the dual objective.
Verdict derivative_correctness() {
  std::mt19937_64 rng(601);
  std::uniform_int_distribution<std::size_t> size(6, 30);
  double worst_g = 0.0, worst_h = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t order = 1 + trial % 4;
    const auto s = random_spectrum(rng, size(rng), -1.0, 1.0, 3);
    const auto beta = uniform_vector(rng, order, 2.0);
    const MomentVector targets(uniform_vector(rng, order, 0.5));

    const auto objective = [&](const std::vector<double>& b) {
      return dual_objective(s, MultiplierVector(b), targets);
    };
    // dual_gradient is mu(beta) - target, the negative objective gradient.
    const auto fd_g = oracle::central_gradient(objective, beta, 1e-5);
    const auto g = dual_gradient(s, MultiplierVector(beta), targets);
    std::vector<double> diff(order);
    for (std::size_t n = 0; n < order; ++n) diff[n] = g[n] + fd_g[n];
    worst_g = std::max(worst_g, sup_norm(diff) / std::max(sup_norm(fd_g), 1e-300));

    const auto gradient = [&](const std::vector<double>& b) {
      auto v = dual_gradient(s, MultiplierVector(b), targets);
      for (double& x : v) x = -x;
      return v;
    };
    const auto jac = oracle::central_jacobian(gradient, beta, 1e-5);
    const auto h = dual_hessian(s, MultiplierVector(beta), order);
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) {
        scale = std::max(scale, std::abs(jac[i][j]));
        err = std::max(err, std::abs(h(Eigen::Index(i), Eigen::Index(j)) - jac[i][j]));
      }
    worst_h = std::max(worst_h, err / std::max(scale, 1e-300));
  }
  return {worst_g <= 1e-6 && worst_h <= 1e-5, "25 instances, gradient rel=" + sci(worst_g) +
                                                  " (need <=1e-6) hessian rel=" + sci(worst_h) +
                                                  " (need <=1e-5)"};
}

// 7. center/uncenter round trip, Clayton centered relations, raw vs centered distributions.
Verdict centered_identities() {
  std::mt19937_64 rng(701);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  double round_trip = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t order = 1 + trial % 8;
    const double center = uc(rng);
    const auto c = uniform_vector(rng, order, 1.0);
    const auto raw = uncenter_multipliers(CenteredMultiplierVector(c, center)).multipliers;
    const auto back = center_multipliers(raw, center);
    for (std::size_t n = 1; n <= order; ++n)
      round_trip = std::max(round_trip, std::abs(back.coeff(n) - c[n - 1]));
    const auto m = uniform_vector(rng, order, 1.0);
    const auto again =
        uncenter_multipliers(center_multipliers(MultiplierVector(m), center)).multipliers;
    for (std::size_t n = 1; n <= order; ++n)
      round_trip = std::max(round_trip, std::abs(again.coeff(n) - m[n - 1]));
  }

  bool clayton_exact = true;
  int clayton_cases = 0;
  for (double beta : {0.5, 1.0, 2.0, 3.7})
    for (double delta : {-0.02, 0.01, 0.05})
      for (double ebar : {-3.0, -0.25, 0.0, 0.1, 1.0, 2.5, 17.0}) {
        const auto centered = center_multipliers(clayton_multipliers(ClaytonParams(beta, delta)), ebar);
        const double b2 = delta * beta * beta;
        clayton_exact = clayton_exact && centered.coeff(2) == b2 &&
                        centered.coeff(1) == beta + 2.0 * b2 * ebar;
        ++clayton_cases;
      }

  double dist_gap = 0.0;
  std::uniform_int_distribution<std::size_t> size(2, 60);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t order = 1 + trial % 8;
    const auto s = random_spectrum(rng, size(rng), -1.0, 1.0, 4);
    const double center = uc(rng) * 0.5;
    const CenteredMultiplierVector c(uniform_vector(rng, order, 1.0), center);
    const auto raw = uncenter_multipliers(c).multipliers;
    const auto p_raw = ext_distribution(s, raw).dist;
    const auto p_centered = ext_distribution(s, c).dist;
    dist_gap = std::max(dist_gap, sup_distance(p_raw, p_centered));
  }

  const bool pass = round_trip <= 1e-9 && clayton_exact && dist_gap <= 1e-14;
  return {pass, "round trip=" + sci(round_trip) + " (need <=1e-9) clayton exact in " +
                    std::to_string(clayton_cases) + " cases=" + (clayton_exact ? "yes" : "no") +
                    " raw/centered sup=" + sci(dist_gap) + " (need <=1e-14)"};
}

// 8. -sum P ln P = ln Z + sum beta_n mu_n.
Verdict legendre_identity() {
  std::mt19937_64 rng(801);
  std::uniform_int_distribution<std::size_t> size(2, 100);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t order = 1 + trial % 6;
    const auto s = random_spectrum(rng, size(rng), -2.0, 2.0, 1);
    const MultiplierVector m(uniform_vector(rng, order, 1.5));
    const auto weighted = ext_distribution(s, m);
    const auto mu = raw_moments(weighted.dist, s, order);
    double rhs = log_partition(s, m);
    for (std::size_t n = 1; n <= order; ++n) rhs += m.coeff(n) * mu.value(n);
    worst = std::max(worst, std::abs(bg_entropy(weighted.dist) - rhs));
  }
  return {worst <= 1e-10, "200 instances, max defect=" + sci(worst) + " (need <=1e-10)"};
}

std::string run_cli(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "qbg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

// 9. The three CLI examples against checked-in golden files.
Verdict cli_golden() {
  const std::string data = QBG_TEST_DATA_DIR;
  const std::string golden = QBG_GOLDEN_DIR;
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"equiv", "--q", "0.98", "--beta", "1", "--spectrum", data + "/spectrum_0_5.txt",
        "--max-order", "12"},
       "equiv.csv"},
      {{"map", "--q", "1", "--beta", "2", "--order", "4"}, "map.csv"},
      {{"clayton", "--beta", "1", "--delta", "0.01"}, "clayton.csv"},
  };
  const auto scratch = std::filesystem::temp_directory_path() / "qbg_acceptance";
  std::filesystem::create_directories(scratch);
  std::string detail;
  bool pass = true;
  for (const auto& [args, file] : cases) {
    int c1 = 0, c2 = 0, c3 = 0;
    const auto first = run_cli(args, c1);
    const auto second = run_cli(args, c2);
    auto to_file = args;
    to_file.insert(to_file.end(), {"--out", (scratch / file).string()});
    run_cli(to_file, c3);
    const auto written = c3 == 0 ? io::read_text_file(scratch / file) : std::string();
    const bool ok = c1 == 0 && c2 == 0 && c3 == 0 && first == second && first == written &&
                    first == io::read_text_file(golden + "/" + file);
    pass = pass && ok;
    detail += (detail.empty() ? "" : " ") + file + "=" + (ok ? "match" : "MISMATCH");
  }
  std::filesystem::remove_all(scratch);
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 Clayton reproduction", clayton_reproduction},
      {"AC2 equivalence convergence", equivalence_convergence},
      {"AC3 pseudo-additivity", pseudo_additivity},
      {"AC4 Boltzmann limit", boltzmann_limit},
      {"AC5 solver round trip", solver_round_trip},
      {"AC6 derivative correctness", derivative_correctness},
      {"AC7 centered-form identities", centered_identities},
      {"AC8 Legendre identity", legendre_identity},
      {"AC9 CLI golden files", cli_golden},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw ") + e.what()};
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    if (!v.pass) ++failed;
    std::printf("[%s] %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(),
                took.count());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
