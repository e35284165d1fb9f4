#include "fbt/bounds.hpp"

#include "fbt/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>

namespace fbt {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kPi = std::numbers::pi;
constexpr int kExactRankCap = 4096;

void require_lambda(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be a finite number >= 0");
}

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError(std::string(what) + " must be a positive finite number");
}

void require_sigma(double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw ValidationError("sigma must lie in (0, 1)");
}

// numerator / 2^shift as a terminating decimal
std::string over_power_of_two(const cpp_int& numerator, int shift) {
    if (shift == 0) return numerator.str();
    cpp_int five = 1;
    for (int i = 0; i < shift; ++i) five *= 5;
    const cpp_int scaled = numerator * five;
    std::string digits = scaled.str();
    if (digits.size() <= static_cast<std::size_t>(shift)) digits.insert(0, shift + 1 - digits.size(), '0');
    digits.insert(digits.size() - shift, ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return digits;
}

cpp_int ipow(cpp_int base, int e) {
    cpp_int out = 1;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

bool exact_case(const SurfaceTopology& t, double lambda) { return lambda == 0.0 && t.rank() <= kExactRankCap; }

}  // namespace

void SurfaceTopology::validate() const {
    if (g < 0 || m < 0) throw ValidationError("genus and hole count must be nonnegative");
}

Bound thm1_bound(const SurfaceTopology& t, double lambda, LambdaKind kind) {
    t.validate();
    require_lambda(lambda);
    if (kind == LambdaKind::Three && !(t.g == 1 && t.m == 0))
        throw ValidationError("the three-element invariant applies only to a torus with one hole");
    const int r = t.rank();
    Bound b{LogNumber::from_ln(std::log(3.0) + r * (std::log(1.5) + 24 * kPi * lambda)), {}};
    if (exact_case(t, lambda)) b.exact = over_power_of_two(ipow(3, r + 1), r);
    return b;
}

Bound thm2_bound(const SurfaceTopology& t, double lambda) {
    t.validate();
    require_lambda(lambda);
    const int r = t.rank();
    Bound b{LogNumber::from_ln(r * (std::log(2.0) + 6 * std::log(3.0) + 6 * std::log(5.0) + 36 * kPi * lambda)), {}};
    if (exact_case(t, lambda)) b.exact = ipow(cpp_int(2) * ipow(15, 6), r).str();
    return b;
}

Bound thm3_bound(const SurfaceTopology& t, double lambda) {
    t.validate();
    require_lambda(lambda);
    const int r = t.rank();
    Bound b{LogNumber::from_ln(r * (6 * std::log(3.0) + 6 * std::log(5.0) + 36 * kPi * lambda)), {}};
    if (exact_case(t, lambda)) b.exact = ipow(cpp_int(ipow(3, 6) * ipow(5, 6)), r).str();
    return b;
}

Bound thm3_bound_sixth_power(const SurfaceTopology& t, double lambda) {
    t.validate();
    require_lambda(lambda);
    const int r = t.rank();
    Bound b{LogNumber::from_ln(6.0 * r * (std::log(15.0) + 6 * kPi * lambda)), {}};
    if (exact_case(t, lambda)) b.exact = ipow(15, 6 * r).str();
    return b;
}

LogNumber prop1a_upper(double alpha, double sigma) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 1");
    require_sigma(sigma);
    return LogNumber::from_ln(std::log(7.0) + 192 * kPi * (2 * alpha + 1) / sigma);
}

LogNumber prop1a_lower(double alpha, double sigma, double C, double c) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 1");
    require_sigma(sigma);
    require_positive(C, "C");
    require_positive(c, "c");
    return LogNumber::from_ln(std::log(c) + C * alpha / sigma);
}

LogNumber prop1a_slalom_lower(double alpha, double delta, double slalom_constant) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 1");
    require_positive(delta, "delta");
    require_positive(slalom_constant, "slalom constant");
    return LogNumber::from_ln((alpha / (10 * slalom_constant * delta) - 1) * std::log(2.0));
}

std::pair<LogNumber, LogNumber> prop1b_bounds(double sigma, double c1, double c2, double c1_lower, double c2_lower) {
    require_sigma(sigma);
    require_positive(c1, "C1");
    require_positive(c2, "C2");
    require_positive(c1_lower, "C1'");
    require_positive(c2_lower, "C2'");
    return {LogNumber::from_ln(std::log(c1) + c2 / sigma), LogNumber::from_ln(std::log(c1_lower) + c2_lower / sigma)};
}

Bound reducible11_bound(const SurfaceTopology& t) {
    t.validate();
    const int r = t.rank();
    Bound b{LogNumber::from_ln(r * std::log(2.0)), {}};
    if (r <= kExactRankCap) b.exact = ipow(2, r).str();
    return b;
}

double lemma3_product_budget(double lambda, int factors) {
    require_lambda(lambda);
    if (factors != 2 && factors != 4 && factors != 6) throw ValidationError("factor count must be 2, 4 or 6");
    return factors * 2 * kPi * lambda;
}

}  // namespace fbt
