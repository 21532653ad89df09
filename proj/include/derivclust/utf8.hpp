#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace derivclust::utf8 {

// Decodes UTF-8 into Unicode scalar values. Throws DataError on invalid input.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string_view> split(std::string_view line, char delim);

// Splits on runs of ASCII spaces/tabs, dropping empty fields.
std::vector<std::string_view> split_ws(std::string_view line);

}  // namespace derivclust::utf8
