#pragma once

#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace derivclust {

// Shortest text for `value` at 9 significant digits.
std::string format_real(double value);

std::optional<double> parse_real(std::string_view text);

// Stage header line for intermediate files, e.g. "#derivclust pairs v1".
std::string stage_header(std::string_view stage);

// Consumes the first line and checks it against stage_header(stage). Throws ParseError.
void expect_stage_header(std::istream& in, std::string_view stage);

// Throw IoError when the file cannot be opened.
std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

}  // namespace derivclust
