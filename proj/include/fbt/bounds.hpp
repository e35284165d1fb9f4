#pragma once

#include "fbt/lognumber.hpp"

#include <string>
#include <utility>

namespace fbt {

/// Surface of genus g with m + 1 holes.
struct SurfaceTopology {
    int g = 0;
    int m = 0;

    int rank() const { return 2 * g + m; }
    void validate() const;
};

/// A bound in log space, plus its exact decimal expansion when the value is
/// a terminating decimal computable exactly (lambda = 0), else empty.
struct Bound {
    LogNumber value;
    std::string exact;
};

/// Which extremal-length invariant feeds the mapping bound. The three-element
/// variant is only meaningful for a torus with one hole.
enum class LambdaKind { Four, Three };

/// 3 (3/2 e^{24 pi lambda})^{2g+m}.
Bound thm1_bound(const SurfaceTopology& t, double lambda, LambdaKind kind = LambdaKind::Four);
/// (2 3^6 5^6 e^{36 pi lambda})^{2g+m}.
Bound thm2_bound(const SurfaceTopology& t, double lambda);
/// (3^6 5^6 e^{36 pi lambda})^{2g+m}.
Bound thm3_bound(const SurfaceTopology& t, double lambda);
/// The same value as (15 e^{6 pi lambda})^{6(2g+m)}.
Bound thm3_bound_sixth_power(const SurfaceTopology& t, double lambda);

/// Punctured surfaces reuse the bounds of the surfaces with holes.
inline Bound cor1a_bound(const SurfaceTopology& t, double lambda) { return thm1_bound(t, lambda); }
inline Bound cor1b_bound(const SurfaceTopology& t, double lambda) { return thm2_bound(t, lambda); }

/// 7 e^{192 pi (2 alpha + 1) / sigma} for the torus with a hole.
LogNumber prop1a_upper(double alpha, double sigma);
/// c e^{C alpha / sigma}.
LogNumber prop1a_lower(double alpha, double sigma, double C, double c);
/// 2^{alpha / (10 C delta) - 1}, the count produced by the slalom words.
LogNumber prop1a_slalom_lower(double alpha, double delta, double slalom_constant);

/// {C1 e^{C2/sigma}, C1' e^{C2'/sigma}}: upper and lower.
std::pair<LogNumber, LogNumber> prop1b_bounds(double sigma, double c1, double c2, double c1_lower, double c2_lower);

/// 2^{2g+m}.
Bound reducible11_bound(const SurfaceTopology& t);

/// factors * 2 pi lambda, the budget of L_- for a product of `factors`
/// images each bounded by 2 pi lambda. factors must be 2, 4 or 6.
double lemma3_product_budget(double lambda, int factors);

}  // namespace fbt
