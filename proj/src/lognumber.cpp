#include "fbt/lognumber.hpp"

#include "fbt/errors.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace fbt {

namespace {
const double kLn10 = std::log(10.0);
}

LogNumber LogNumber::from_value(double value) {
    if (!(value >= 0.0) || std::isinf(value))
        throw ValidationError("LogNumber requires a finite nonnegative value");
    return value == 0.0 ? zero() : LogNumber(std::log(value));
}

LogNumber LogNumber::from_decimal(std::string_view text) {
    std::string s(text);
    if (s == "0") return zero();
    auto epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long long exp10 = 0;
    try {
        std::size_t used = 0;
        double m = std::stod(mant, &used);
        if (used != mant.size()) throw ValidationError("bad decimal: " + s);
        if (epos != std::string::npos) {
            std::string es = s.substr(epos + 1);
            std::size_t eused = 0;
            exp10 = std::stoll(es, &eused);
            if (eused != es.size()) throw ValidationError("bad decimal: " + s);
        }
        if (m < 0.0) throw ValidationError("LogNumber cannot be negative: " + s);
        if (m == 0.0) return zero();
        return LogNumber(std::log(m) + static_cast<double>(exp10) * kLn10);
    } catch (const std::logic_error&) {
        throw ValidationError("bad decimal: " + s);
    }
}

double LogNumber::value() const { return std::exp(ln_); }

std::string LogNumber::decimal() const {
    if (is_zero()) return "0";
    if (std::abs(ln_) < 690.0) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.15E", std::exp(ln_));
        return buf;
    }
    double l10 = ln_ / kLn10;
    double e = std::floor(l10);
    double mant = std::pow(10.0, l10 - e);
    if (mant >= 10.0) {
        mant /= 10.0;
        e += 1.0;
    }
    // Rounding to 15 decimals may carry to 10.000...
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15f", mant);
    if (buf[0] == '1' && buf[1] == '0') {
        mant /= 10.0;
        e += 1.0;
        std::snprintf(buf, sizeof buf, "%.15f", mant);
    }
    char out[96];
    std::snprintf(out, sizeof out, "%sE%+03lld", buf, static_cast<long long>(e));
    return out;
}

LogNumber LogNumber::operator+(const LogNumber& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    double hi = std::max(ln_, o.ln_);
    double lo = std::min(ln_, o.ln_);
    return LogNumber(hi + std::log1p(std::exp(lo - hi)));
}

LogNumber LogNumber::pow(double exponent) const {
    if (is_zero()) return exponent == 0.0 ? one() : zero();
    return LogNumber(ln_ * exponent);
}

}  // namespace fbt
