#include "quench/time_profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quench/errors.hpp"
#include "quench/format.hpp"

namespace quench {

TimeProfile TimeProfile::constant(double value) {
    if (!std::isfinite(value)) throw ParameterError("time profile constant must be finite");
    TimeProfile p;
    p.value_ = value;
    return p;
}

TimeProfile TimeProfile::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size() || times.empty())
        throw ParameterError("tabulated profile needs matching, non-empty knot arrays");
    if (times.size() == 1) return constant(values[0]);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i]))
            throw ParameterError("tabulated profile knots must be finite");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw ParameterError("tabulated profile times must be strictly increasing");
    }
    TimeProfile p;
    p.value_ = values.front();
    p.times_ = std::move(times);
    p.values_ = std::move(values);
    return p;
}

double TimeProfile::operator()(double t) const {
    if (is_constant()) return value_;
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - times_.begin());
    double t0 = times_[i - 1], t1 = times_[i];
    double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * values_[i - 1] + w * values_[i];
}

namespace {
// integral of a linear function squared, given its end values
double seg_sq(double len, double f0, double f1) {
    return len * (f0 * f0 + f0 * f1 + f1 * f1) / 3.0;
}
}  // namespace

double TimeProfile::integral_of_square(double t) const {
    if (t <= 0.0) return 0.0;
    if (is_constant()) return value_ * value_ * t;

    double total = 0.0;
    double cursor = 0.0;
    // flat part before the first knot
    if (times_.front() > 0.0) {
        double end = std::min(t, times_.front());
        total += values_.front() * values_.front() * end;
        cursor = end;
    }
    for (std::size_t i = 1; i < times_.size() && cursor < t; ++i) {
        double a = std::max(times_[i - 1], cursor);
        double b = std::min(times_[i], t);
        if (b <= a) continue;
        total += seg_sq(b - a, (*this)(a), (*this)(b));
        cursor = b;
    }
    if (t > cursor) {
        double v = values_.back();
        total += v * v * (t - std::max(cursor, times_.back()));
    }
    return total;
}

double TimeProfile::sup_abs(double t_end) const {
    if (is_constant()) return std::abs(value_);
    double s = std::abs((*this)(0.0));
    s = std::max(s, std::abs((*this)(t_end)));
    for (std::size_t i = 0; i < times_.size(); ++i)
        if (times_[i] >= 0.0 && times_[i] <= t_end) s = std::max(s, std::abs(values_[i]));
    return s;
}

TimeProfile TimeProfile::scaled(double factor) const {
    if (is_constant()) return constant(value_ * factor);
    std::vector<double> v = values_;
    for (double& x : v) x *= factor;
    return tabulated(times_, std::move(v));
}

TimeProfile TimeProfile::parse(const std::string& text) {
    if (text.find(':') == std::string::npos) return constant(parse_double(text));
    std::vector<double> ts, vs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ParameterError("profile knot '" + item + "' is not of the form t:value");
        ts.push_back(parse_double(item.substr(0, colon)));
        vs.push_back(parse_double(item.substr(colon + 1)));
    }
    return tabulated(std::move(ts), std::move(vs));
}

std::string TimeProfile::to_string() const {
    if (is_constant()) return format_double(value_);
    std::string out;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (i) out += ',';
        out += format_double(times_[i]) + ':' + format_double(values_[i]);
    }
    return out;
}

}  // namespace quench
