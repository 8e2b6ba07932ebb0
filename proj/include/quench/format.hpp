#pragma once

#include <string>

namespace quench {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
// Strict: the whole string (after trimming) must be a number.
double parse_double(const std::string& text);
long long parse_int(const std::string& text);
std::string trim(const std::string& s);

}  // namespace quench
