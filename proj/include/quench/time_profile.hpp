#pragma once

#include <string>
#include <vector>

namespace quench {

// A time coefficient a(t), b(t) or k(t): either a constant or a table of
// (t, value) knots interpolated linearly, held flat outside the table.
class TimeProfile {
public:
    TimeProfile() = default;
    static TimeProfile constant(double value);
    static TimeProfile tabulated(std::vector<double> times, std::vector<double> values);

    bool is_constant() const { return times_.empty(); }
    double constant_value() const { return value_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(double t) const;
    // Exact integral of the squared profile over [0, t].
    double integral_of_square(double t) const;
    double sup_abs(double t_end) const;

    TimeProfile scaled(double factor) const;

    // "2.5" or "0:1,0.5:2,1:1.5"
    static TimeProfile parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const TimeProfile&) const = default;

private:
    double value_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
};

}  // namespace quench
