#pragma once

// Direct 200-digit evaluation of the bound formulas: form the value, then
// take its logarithm.

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<200>>;

inline Big pi() { return boost::math::constants::pi<Big>(); }

inline Big thm1_ln(int rank, double lambda) {
    Big base = Big(3) / 2 * exp(24 * pi() * Big(lambda));
    return log(3 * pow(base, rank));
}

inline Big thm2_ln(int rank, double lambda) {
    Big base = 2 * pow(Big(3), 6) * pow(Big(5), 6) * exp(36 * pi() * Big(lambda));
    return log(pow(base, rank));
}

inline Big thm3_ln(int rank, double lambda) {
    Big base = pow(Big(3), 6) * pow(Big(5), 6) * exp(36 * pi() * Big(lambda));
    return log(pow(base, rank));
}

inline Big prop1a_upper_ln(double alpha, double sigma) {
    return log(7 * exp(192 * pi() * (2 * Big(alpha) + 1) / Big(sigma)));
}

inline Big prop1a_lower_ln(double alpha, double sigma, double C, double c) {
    return log(Big(c) * exp(Big(C) * Big(alpha) / Big(sigma)));
}

}  // namespace oracle
