#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace qea {

// A nonnegative quantity stored as its base-10 logarithm. Runtimes such as
// GNFS at n = 2048 (~1e41) or 2^q for q in the thousands are far outside the
// range of double, but their logarithms are not.
class LogValue {
public:
    LogValue() = default;

    static LogValue from_log10(double log10_magnitude) noexcept {
        LogValue v;
        if (log10_magnitude == -std::numeric_limits<double>::infinity()) {
            v.zero_ = true;
        } else {
            v.log10_ = log10_magnitude;
            v.zero_ = false;
        }
        return v;
    }

    // Requires value >= 0.
    static LogValue from_linear(double value) noexcept {
        return value == 0.0 ? zero() : from_log10(std::log10(value));
    }

    static LogValue zero() noexcept { return LogValue{}; }
    static LogValue one() noexcept { return from_log10(0.0); }

    bool is_zero() const noexcept { return zero_; }

    // -inf for zero.
    double log10() const noexcept {
        return zero_ ? -std::numeric_limits<double>::infinity() : log10_;
    }

    double linear() const noexcept { return zero_ ? 0.0 : std::pow(10.0, log10_); }

    friend LogValue operator*(LogValue a, LogValue b) noexcept {
        if (a.zero_ || b.zero_) return zero();
        return from_log10(a.log10_ + b.log10_);
    }

    friend LogValue operator/(LogValue a, LogValue b) noexcept {
        // Caller guarantees b is nonzero.
        if (a.zero_) return zero();
        return from_log10(a.log10_ - b.log10_);
    }

    friend bool operator==(LogValue a, LogValue b) noexcept {
        return a.zero_ == b.zero_ && (a.zero_ || a.log10_ == b.log10_);
    }

    friend bool operator<(LogValue a, LogValue b) noexcept { return a.log10() < b.log10(); }
    friend bool operator<=(LogValue a, LogValue b) noexcept { return a.log10() <= b.log10(); }

private:
    double log10_ = 0.0;
    bool zero_ = true;
};

// log10(10^a + 10^b) without leaving log space.
inline LogValue log_sum(LogValue a, LogValue b) noexcept {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = std::max(a.log10(), b.log10());
    const double lo = std::min(a.log10(), b.log10());
    return LogValue::from_log10(hi + std::log1p(std::pow(10.0, lo - hi)) / std::log(10.0));
}

}  // namespace qea
