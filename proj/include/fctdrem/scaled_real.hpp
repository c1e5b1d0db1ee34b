#pragma once

#include <cmath>
#include <cstdint>

namespace fctdrem {

/**
 * Positive real stored as mantissa * 2^exponent with mantissa in [0.5, 1).
 *
 * Running products of many factors in (0, 1] leave the double range after a
 * few hundred steps; this keeps them strictly positive and keeps ratios of
 * two such products accurate.
 */
class ScaledReal {
public:
    constexpr ScaledReal() = default;   // 1.0

    explicit ScaledReal(double value) {
        int e = 0;
        mantissa_ = std::frexp(value, &e);
        exponent_ = e;
    }

    ScaledReal &operator*=(double factor) {
        int e = 0;
        mantissa_ = std::frexp(mantissa_ * factor, &e);
        exponent_ += e;
        return *this;
    }

    /// Ratio of two scaled values as a plain double (may underflow to 0).
    friend double operator/(const ScaledReal &a, const ScaledReal &b) {
        const std::int64_t de = a.exponent_ - b.exponent_;
        return ratio_ldexp(a.mantissa_ / b.mantissa_, de);
    }

    /// Plain double value; underflows to 0 once below the double range.
    double value() const { return ratio_ldexp(mantissa_, exponent_); }

    /// Natural logarithm, finite for every representable value.
    double log() const { return std::log(mantissa_) + static_cast<double>(exponent_) * std::log(2.0); }

    double mantissa() const { return mantissa_; }
    std::int64_t exponent() const { return exponent_; }

    /// Value as long double (wider exponent range where available).
    long double to_long_double() const {
        return std::ldexp(static_cast<long double>(mantissa_), static_cast<int>(exponent_));
    }

private:
    static double ratio_ldexp(double m, std::int64_t e) {
        if (e < -4000) {
            return 0.0;
        }
        if (e > 4000) {
            return HUGE_VAL;
        }
        return std::ldexp(m, static_cast<int>(e));
    }

    double mantissa_ = 0.5;
    std::int64_t exponent_ = 1;
};

} // namespace fctdrem
