#include "qbg/cli.hpp"

#include <CLI11.hpp>
#include <array>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <utility>

#include "qbg/equivalence.hpp"
#include "qbg/error.hpp"
#include "qbg/extbg.hpp"
#include "qbg/io.hpp"
#include "qbg/maxent.hpp"
#include "qbg/qstat.hpp"

namespace qbg::cli {
namespace {

constexpr std::array<std::pair<Subcommand, std::string_view>, 8> kSubcommands{{
    {Subcommand::DistQ, "dist-q"},
    {Subcommand::DistExt, "dist-ext"},
    {Subcommand::Map, "map"},
    {Subcommand::InvertMap, "invert-map"},
    {Subcommand::Clayton, "clayton"},
    {Subcommand::Equiv, "equiv"},
    {Subcommand::Solve, "solve"},
    {Subcommand::Entropy, "entropy"},
}};

constexpr double kDefaultInvertTol = 1e-9;

template <typename T>
const T& require(const std::optional<T>& value, std::string_view flag, Subcommand sub) {
  if (!value)
    throw Error(ErrorCode::ConfigError, std::string(subcommand_name(sub)) + " requires --" +
                                            std::string(flag));
  return *value;
}

double require_finite(double value, std::string_view flag) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::ConfigError, "--" + std::string(flag) + " must be finite");
  return value;
}

class CsvReport {
 public:
  explicit CsvReport(Subcommand sub) {
    text_ += "# qbg " + std::string(kToolVersion) + "\n";
    meta("subcommand", std::string(subcommand_name(sub)));
  }

  void meta(std::string_view key, const std::string& value) {
    text_ += "# " + std::string(key) + "=" + value + "\n";
  }
  void meta(std::string_view key, double value) { meta(key, io::format_real(value)); }

  void row(std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& f : fields) {
      if (!first) text_ += ',';
      text_ += f;
      first = false;
    }
    text_ += '\n';
  }

  std::string take() && { return std::move(text_); }

 private:
  std::string text_;
};

std::string num(double v) { return io::format_real(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(std::int64_t v) { return std::to_string(v); }

void write_multiplier_rows(CsvReport& csv, const MultiplierVector& m) {
  csv.row({"n", "beta_n"});
  for (std::size_t n = 1; n <= m.order(); ++n) csv.row({num(n), num(m.coeff(n))});
}

void write_level_rows(CsvReport& csv, const EnergySpectrum& spectrum, const Distribution& dist) {
  csv.row({"level", "energy", "degeneracy", "probability"});
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    csv.row({num(i), num(spectrum.levels()[i]), num(spectrum.degeneracies()[i]), num(dist[i])});
}

std::string report_dist_q(const RunConfig& cfg) {
  const auto sub = cfg.subcommand;
  const auto spectrum = io::read_spectrum_file(require(cfg.spectrum, "spectrum", sub));
  const QParams params(require(cfg.q, "q", sub), require(cfg.beta, "beta", sub));
  const auto result = q_distribution(spectrum, params);

  CsvReport csv(sub);
  csv.meta("q", params.q());
  csv.meta("beta", params.beta());
  csv.meta("levels", num(spectrum.size()));
  csv.meta("log_partition", result.log_partition);
  csv.row({"level", "energy", "degeneracy", "probability", "cutoff"});
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const bool cut = !q_log_weight(params, spectrum.levels()[i]).has_value();
    csv.row({num(i), num(spectrum.levels()[i]), num(spectrum.degeneracies()[i]),
             num(result.dist[i]), cut ? "1" : "0"});
  }
  return std::move(csv).take();
}

std::string report_dist_ext(const RunConfig& cfg) {
  const auto sub = cfg.subcommand;
  const auto spectrum = io::read_spectrum_file(require(cfg.spectrum, "spectrum", sub));
  const auto m = io::read_multiplier_file(require(cfg.multipliers, "multipliers", sub));
  const auto result = ext_distribution(spectrum, m);

  CsvReport csv(sub);
  csv.meta("order", num(m.order()));
  csv.meta("levels", num(spectrum.size()));
  csv.meta("log_partition", result.log_partition);
  write_level_rows(csv, spectrum, result.dist);
  return std::move(csv).take();
}

std::string report_map(const RunConfig& cfg) {
  const auto sub = cfg.subcommand;
  const QParams params(require(cfg.q, "q", sub), require(cfg.beta, "beta", sub));
  const auto order = require(cfg.order, "order", sub);
  CsvReport csv(sub);
  csv.meta("q", params.q());
  csv.meta("beta", params.beta());
  csv.meta("order", num(order));
  write_multiplier_rows(csv, q_to_multipliers(params, order));
  return std::move(csv).take();
}

std::string report_invert_map(const RunConfig& cfg) {
  const auto sub = cfg.subcommand;
  const auto m = io::read_multiplier_file(require(cfg.multipliers, "multipliers", sub));
  const double tol = cfg.tol.value_or(kDefaultInvertTol);
  const auto params = multipliers_to_q(m, tol);

  CsvReport csv(sub);
  csv.meta("order", num(m.order()));
  csv.meta("tol", tol);
  csv.row({"consistent", "q", "beta"});
  if (params)
    csv.row({"true", num(params->q()), num(params->beta())});
  else
    csv.row({"false", "nan", "nan"});
  return std::move(csv).take();
}

std::string report_clayton(const RunConfig& cfg) {
  const auto sub = cfg.subcommand;
  const ClaytonParams p(require(cfg.beta, "beta", sub), require(cfg.delta, "delta", sub));
  CsvReport csv(sub);
  csv.meta("beta", p.beta);
  csv.meta("delta", p.delta);
  csv.meta("q", clayton_to_q(p.delta));
  write_multiplier_rows(csv, clayton_multipliers(p));
  return std::move(csv).take();
}

std::string report_equiv(const RunConfig& cfg) {
  const auto sub = cfg.subcommand;
  const auto spectrum = io::read_spectrum_file(require(cfg.spectrum, "spectrum", sub));
  const QParams params(require(cfg.q, "q", sub), require(cfg.beta, "beta", sub));
  const auto max_order = require(cfg.max_order, "max-order", sub);
  const auto report = equivalence_report(spectrum, params, max_order);

  CsvReport csv(sub);
  csv.meta("q", params.q());
  csv.meta("beta", params.beta());
  csv.meta("levels", num(spectrum.size()));
  csv.meta("max_order", num(max_order));
  csv.meta("domain_ratio", report.domain_ratio);
  csv.row({"N", "sup_distance"});
  for (std::size_t i = 0; i < report.orders.size(); ++i)
    csv.row({num(report.orders[i]), num(report.sup_distances[i])});
  return std::move(csv).take();
}

std::string report_solve(const RunConfig& cfg) {
  const auto sub = cfg.subcommand;
  const auto spectrum = io::read_spectrum_file(require(cfg.spectrum, "spectrum", sub));
  const MomentVector targets(require(cfg.targets, "targets", sub));
  SolverOptions opts;
  if (cfg.tol) opts.tol = *cfg.tol;
  const auto result = solve_multipliers(spectrum, targets, opts);

  CsvReport csv(sub);
  csv.meta("order", num(targets.order()));
  csv.meta("levels", num(spectrum.size()));
  csv.meta("tol", opts.tol);
  csv.meta("converged", result.report.converged ? "true" : "false");
  csv.meta("iterations", std::to_string(result.report.iterations));
  csv.meta("residual_norm", result.report.residual_norm);
  csv.meta("final_step_size", result.report.final_step_size);
  csv.meta("rescale_factor", result.report.rescale_factor);
  csv.meta("rescale_center", result.report.rescale_center);
  write_multiplier_rows(csv, result.multipliers);
  return std::move(csv).take();
}

std::string report_entropy(const RunConfig& cfg) {
  const auto sub = cfg.subcommand;
  const auto spectrum = io::read_spectrum_file(require(cfg.spectrum, "spectrum", sub));
  CsvReport csv(sub);
  std::optional<WeightedDistribution> result;
  double q = 1.0;
  if (cfg.multipliers) {
    const auto m = io::read_multiplier_file(*cfg.multipliers);
    q = cfg.q.value_or(1.0);
    csv.meta("source", std::string("multipliers"));
    csv.meta("order", num(m.order()));
    result = ext_distribution(spectrum, m);
  } else {
    const QParams params(require(cfg.q, "q", sub), require(cfg.beta, "beta", sub));
    q = params.q();
    csv.meta("source", std::string("q-distribution"));
    csv.meta("beta", params.beta());
    result = q_distribution(spectrum, params);
  }
  csv.meta("q", q);
  const auto& dist = result->dist;
  csv.row({"quantity", "value"});
  csv.row({"log_partition", num(result->log_partition)});
  csv.row({"bg_entropy", num(bg_entropy(dist))});
  csv.row({"tsallis_entropy", num(tsallis_entropy(dist, q))});
  csv.row({"mean_energy", num(raw_moments(dist, spectrum, 1).value(1))});
  csv.row({"escort_energy", num(escort_energy(dist, spectrum, q))});
  return std::move(csv).take();
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto partial = path;
  partial += ".partial";
  {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (out) out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(partial, ignored);
      throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(partial, path, ec);
  if (ec) {
    std::filesystem::remove(partial, ec);
    throw Error(ErrorCode::IoError, "cannot move report into " + path.string());
  }
}

}  // namespace

std::optional<Subcommand> parse_subcommand(std::string_view name) {
  for (const auto& [sub, text] : kSubcommands)
    if (text == name) return sub;
  return std::nullopt;
}

std::string_view subcommand_name(Subcommand sub) {
  for (const auto& [s, text] : kSubcommands)
    if (s == sub) return text;
  return "unknown";
}

void merge_config_file(RunConfig& cfg, const std::filesystem::path& config_path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(io::read_text_file(config_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, config_path.string() + ": " + e.what());
  }
  if (!doc.is_object())
    throw Error(ErrorCode::ConfigError, config_path.string() + ": expected a JSON object");

  const auto base = config_path.parent_path();
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "spectrum" || key == "multipliers" || key == "out") {
        auto path = std::filesystem::path(value.get<std::string>());
        if (path.is_relative()) path = base / path;
        auto& slot = key == "spectrum" ? cfg.spectrum : key == "multipliers" ? cfg.multipliers : cfg.out;
        if (!slot) slot = path;
      } else if (key == "q" || key == "beta" || key == "delta" || key == "tol") {
        auto& slot = key == "q" ? cfg.q : key == "beta" ? cfg.beta : key == "delta" ? cfg.delta : cfg.tol;
        if (!slot) slot = require_finite(value.get<double>(), key);
      } else if (key == "order" || key == "max-order") {
        auto& slot = key == "order" ? cfg.order : cfg.max_order;
        if (!slot) slot = value.get<std::size_t>();
      } else if (key == "targets") {
        if (!cfg.targets)
          cfg.targets = value.is_string() ? io::parse_real_list(value.get<std::string>())
                                          : value.get<std::vector<double>>();
      } else {
        throw Error(ErrorCode::ConfigError, config_path.string() + ": unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, config_path.string() + ": " + e.what());
  }
}

RunConfig parse_arguments(int argc, const char* const* argv) {
  CLI::App app{"Tsallis and extended Boltzmann-Gibbs statistics on discrete spectra", "qbg"};
  std::string sub_name;
  std::string spectrum, multipliers, targets, out, config;
  double q = 0, beta = 0, delta = 0, tol = 0;
  std::size_t order = 0, max_order = 0;
  app.add_option("subcommand", sub_name,
                 "dist-q | dist-ext | map | invert-map | clayton | equiv | solve | entropy")
      ->required();
  auto* o_spectrum = app.add_option("--spectrum", spectrum, "spectrum file (energy,degeneracy)");
  auto* o_mult = app.add_option("--multipliers", multipliers, "multiplier file (n,beta_n)");
  auto* o_q = app.add_option("--q", q, "entropic index");
  auto* o_beta = app.add_option("--beta", beta, "inverse temperature");
  auto* o_delta = app.add_option("--delta", delta, "Clayton correction");
  auto* o_order = app.add_option("--order", order, "truncation order");
  auto* o_max = app.add_option("--max-order", max_order, "largest order in an equivalence report");
  auto* o_targets = app.add_option("--targets", targets, "comma-separated raw moments");
  auto* o_tol = app.add_option("--tol", tol, "tolerance");
  auto* o_out = app.add_option("--out", out, "report path (default: stdout)");
  auto* o_config = app.add_option("--config", config, "JSON file supplying unset parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }

  RunConfig cfg;
  const auto sub = parse_subcommand(sub_name);
  if (!sub) throw Error(ErrorCode::ConfigError, "unknown subcommand '" + sub_name + "'");
  cfg.subcommand = *sub;
  if (o_spectrum->count()) cfg.spectrum = spectrum;
  if (o_mult->count()) cfg.multipliers = multipliers;
  if (o_q->count()) cfg.q = require_finite(q, "q");
  if (o_beta->count()) cfg.beta = require_finite(beta, "beta");
  if (o_delta->count()) cfg.delta = require_finite(delta, "delta");
  if (o_order->count()) cfg.order = order;
  if (o_max->count()) cfg.max_order = max_order;
  if (o_targets->count()) cfg.targets = io::parse_real_list(targets);
  if (o_tol->count()) cfg.tol = require_finite(tol, "tol");
  if (o_out->count()) cfg.out = out;
  if (o_config->count()) merge_config_file(cfg, config);
  return cfg;
}

std::string render_report(const RunConfig& cfg) {
  switch (cfg.subcommand) {
    case Subcommand::DistQ: return report_dist_q(cfg);
    case Subcommand::DistExt: return report_dist_ext(cfg);
    case Subcommand::Map: return report_map(cfg);
    case Subcommand::InvertMap: return report_invert_map(cfg);
    case Subcommand::Clayton: return report_clayton(cfg);
    case Subcommand::Equiv: return report_equiv(cfg);
    case Subcommand::Solve: return report_solve(cfg);
    case Subcommand::Entropy: return report_entropy(cfg);
  }
  throw Error(ErrorCode::ConfigError, "unhandled subcommand");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diagnostics) {
  try {
    const auto text = render_report(cfg);
    if (cfg.out)
      write_atomically(*cfg.out, text);
    else
      out << text;
    return 0;
  } catch (const Error& e) {
    diagnostics << "qbg: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    diagnostics << "qbg: InternalError: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& diagnostics) {
  RunConfig cfg;
  try {
    cfg = parse_arguments(argc, argv);
  } catch (const HelpRequested& help) {
    out << help.text;
    return 0;
  } catch (const Error& e) {
    diagnostics << "qbg: " << e.what() << '\n';
    return 2;
  }
  return run(cfg, out, diagnostics);
}

}  // namespace qbg::cli
