#include "qbg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "qbg/error.hpp"

namespace qbg::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::string_view source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              std::string(source) + ":" + std::to_string(line) + ": " + what);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

bool parse_int(std::string_view text, std::int64_t& out) {
  text = trim(text);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

struct Record {
  std::size_t line;
  std::string_view first;
  std::string_view second;
};

// Splits into two-field records, skipping comments and blank lines.
std::vector<Record> records(std::string_view text, std::string_view source) {
  std::vector<Record> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      parse_error(source, line_no, "expected exactly two comma-separated fields");
    out.push_back({line_no, line.substr(0, comma), line.substr(comma + 1)});
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

EnergySpectrum parse_spectrum(std::string_view text, std::string_view source) {
  std::vector<double> levels;
  std::vector<std::int64_t> degeneracies;
  for (const auto& rec : records(text, source)) {
    double energy = 0.0;
    std::int64_t degeneracy = 0;
    if (!parse_double(rec.first, energy)) parse_error(source, rec.line, "bad energy");
    if (!parse_int(rec.second, degeneracy)) parse_error(source, rec.line, "bad degeneracy");
    levels.push_back(energy);
    degeneracies.push_back(degeneracy);
  }
  return EnergySpectrum(std::move(levels), std::move(degeneracies));
}

EnergySpectrum read_spectrum_file(const std::filesystem::path& path) {
  return parse_spectrum(read_text_file(path), path.string());
}

MultiplierVector parse_multipliers(std::string_view text, std::string_view source) {
  std::vector<double> coeffs;
  for (const auto& rec : records(text, source)) {
    std::int64_t n = 0;
    double beta = 0.0;
    if (!parse_int(rec.first, n)) parse_error(source, rec.line, "bad multiplier index");
    if (n != static_cast<std::int64_t>(coeffs.size()) + 1)
      parse_error(source, rec.line,
                  "expected index " + std::to_string(coeffs.size() + 1) + ", got " +
                      std::to_string(n));
    if (!parse_double(rec.second, beta)) parse_error(source, rec.line, "bad multiplier value");
    coeffs.push_back(beta);
  }
  if (coeffs.empty()) parse_error(source, 0, "no multipliers");
  return MultiplierVector(std::move(coeffs));
}

MultiplierVector read_multiplier_file(const std::filesystem::path& path) {
  return parse_multipliers(read_text_file(path), path.string());
}

std::vector<double> parse_real_list(std::string_view csv) {
  std::vector<double> out;
  std::size_t field = 0;
  for (;;) {
    const auto comma = csv.find(',');
    double value = 0.0;
    ++field;
    if (!parse_double(csv.substr(0, comma), value))
      throw Error(ErrorCode::ParseError, "list entry " + std::to_string(field) + " is not a number");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_real(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  // Fixed notation pads large integers past 17 significant digits.
  const std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
  const auto first = text.find_first_of("123456789");
  const auto end = text.find('e');
  std::size_t digits = 0;
  for (auto i = first; i < std::min(end, text.size()); ++i)
    if (text[i] != '.') ++digits;
  if (digits > 17) res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

}  // namespace qbg::io
