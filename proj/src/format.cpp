#include "quench/format.hpp"

#include <charconv>
#include <cmath>

#include "quench/errors.hpp"

namespace quench {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text) {
    std::string t = trim(text);
    if (t == "inf" || t == "+inf") return INFINITY;
    if (t == "-inf") return -INFINITY;
    const char* first = t.data();
    if (!t.empty() && t[0] == '+') ++first;
    double v = 0.0;
    auto res = std::from_chars(first, t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ParameterError("not a number: '" + text + "'");
    return v;
}

long long parse_int(const std::string& text) {
    std::string t = trim(text);
    long long v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        // accept integral values written as 1e4
        double d = 0.0;
        try {
            d = parse_double(t);
        } catch (const ParameterError&) {
            throw ParameterError("not an integer: '" + text + "'");
        }
        if (d != std::floor(d) || std::abs(d) > 9.0e18)
            throw ParameterError("not an integer: '" + text + "'");
        return static_cast<long long>(d);
    }
    return v;
}

}  // namespace quench
