#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eam {

/// Shortest decimal representation that round-trips to the same double.
/// Infinities are written as "inf".
std::string format_double(double x);
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace eam
