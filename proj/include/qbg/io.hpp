#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qbg/extbg.hpp"
#include "qbg/spectrum.hpp"

namespace qbg::io {

// Text formats, UTF-8, one record per line, '#' lines and blank lines ignored:
//   spectrum:    energy,degeneracy      e.g. "0.5,2"
//   multipliers: n,beta_n               n ascending from 1 without gaps
// Malformed input throws ParseError naming the source and line.

EnergySpectrum parse_spectrum(std::string_view text, std::string_view source = "<spectrum>");
EnergySpectrum read_spectrum_file(const std::filesystem::path& path);

MultiplierVector parse_multipliers(std::string_view text,
                                   std::string_view source = "<multipliers>");
MultiplierVector read_multiplier_file(const std::filesystem::path& path);

/// "0.5,0.25,1e-3" -> {0.5, 0.25, 0.001}.
std::vector<double> parse_real_list(std::string_view csv);

/// Shortest decimal that round-trips to `value`; negative zero prints as "0".
std::string format_real(double value);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace qbg::io
