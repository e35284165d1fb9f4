#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace fbt {

/// Nonnegative real stored as its natural logarithm. Zero is -inf.
///
/// Bound values in this library routinely exceed the range of double
/// (e^{36 pi lambda} with lambda ~ 10 is already ~1e490), so all arithmetic
/// stays in log space.
class LogNumber {
public:
    constexpr LogNumber() = default;

    static LogNumber from_ln(double ln) { return LogNumber(ln); }
    static LogNumber from_value(double value);
    static LogNumber zero() { return LogNumber(-std::numeric_limits<double>::infinity()); }
    static LogNumber one() { return LogNumber(0.0); }

    /// Parses `d.ddddE+exp` (or any decimal/scientific literal) without
    /// passing through double for the exponent part, so huge values survive.
    static LogNumber from_decimal(std::string_view text);

    double ln() const noexcept { return ln_; }
    bool is_zero() const noexcept { return ln_ == -std::numeric_limits<double>::infinity(); }

    /// exp(ln); +inf when it overflows double.
    double value() const;

    /// Mantissa/exponent rendering `d.dddddddddddddddE+exp` (16 significant
    /// digits), "0" for zero.
    std::string decimal() const;

    LogNumber operator*(const LogNumber& o) const { return LogNumber(ln_ + o.ln_); }
    LogNumber operator/(const LogNumber& o) const { return LogNumber(ln_ - o.ln_); }
    LogNumber operator+(const LogNumber& o) const;
    LogNumber pow(double exponent) const;

    friend std::partial_ordering operator<=>(const LogNumber& a, const LogNumber& b) {
        return a.ln_ <=> b.ln_;
    }
    friend bool operator==(const LogNumber& a, const LogNumber& b) { return a.ln_ == b.ln_; }

private:
    explicit constexpr LogNumber(double ln) : ln_(ln) {}
    double ln_ = -std::numeric_limits<double>::infinity();
};

}  // namespace fbt
