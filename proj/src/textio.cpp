#include "derivclust/textio.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <system_error>

#include "derivclust/error.hpp"

namespace derivclust {

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  if (ec != std::errc()) throw std::runtime_error("cannot format real");
  std::string out(buf, ptr);
  if (out == "-0") out = "0";
  return out;
}

std::optional<double> parse_real(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string stage_header(std::string_view stage) {
  return "#derivclust " + std::string(stage) + " v1";
}

void expect_stage_header(std::istream& in, std::string_view stage) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header '" + stage_header(stage) + "'");
  if (line != stage_header(stage)) {
    throw ParseError(1, "expected header '" + stage_header(stage) + "', found '" + line + "'");
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace derivclust
