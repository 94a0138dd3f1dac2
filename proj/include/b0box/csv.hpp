#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace b0box::csv {

/// 17 significant digits, locale independent.
std::string full(double v);

/// Locale-independent parse of a whole field; throws std::invalid_argument.
double parse_double(std::string_view field);
long long parse_integer(std::string_view field);

std::vector<std::string_view> split(std::string_view line, char sep = ',');

}  // namespace b0box::csv
