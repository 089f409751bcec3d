#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qbg::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Subcommand { DistQ, DistExt, Map, InvertMap, Clayton, Equiv, Solve, Entropy };

std::optional<Subcommand> parse_subcommand(std::string_view name);
std::string_view subcommand_name(Subcommand sub);

/// One invocation. Unset optionals are "not given"; each subcommand checks
/// for the inputs it needs and reports ConfigError otherwise.
struct RunConfig {
  Subcommand subcommand = Subcommand::Map;
  std::optional<std::filesystem::path> spectrum;
  std::optional<std::filesystem::path> multipliers;
  std::optional<double> q;
  std::optional<double> beta;
  std::optional<double> delta;
  std::optional<std::size_t> order;
  std::optional<std::size_t> max_order;
  std::optional<std::vector<double>> targets;
  std::optional<double> tol;
  /// Report destination; standard output when unset.
  std::optional<std::filesystem::path> out;
};

/// Thrown by parse_arguments for --help; carries the usage text.
struct HelpRequested {
  std::string text;
};

/// Parses `qbg <subcommand> [flags]`. A --config JSON file fills any field
/// the flags left unset; relative paths inside it resolve against its own
/// directory. Throws ConfigError (and ParseError for bad literals).
RunConfig parse_arguments(int argc, const char* const* argv);

/// Fills unset fields of `cfg` from a JSON object.
void merge_config_file(RunConfig& cfg, const std::filesystem::path& config_path);

/// Computes the report for `cfg` as CSV text. Throws qbg::Error.
std::string render_report(const RunConfig& cfg);

/// Renders and writes the report. Returns 0 on success; otherwise prints one
/// diagnostic line starting with the error name and leaves no output file.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& diagnostics);

/// Entry point used by the qbg executable.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& diagnostics);

}  // namespace qbg::cli
