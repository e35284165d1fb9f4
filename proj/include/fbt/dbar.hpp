#pragma once

#include "fbt/config3.hpp"
#include "fbt/conformal.hpp"
#include "fbt/word.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace fbt {

/// Lattice Z + i alpha Z, the second pole nu of the dipole kernel and the
/// truncation |n|, |m| <= N of every lattice sum.
struct KernelParams {
    double alpha = 1.0;
    cplx nu{0.5, 0.5};
    int N = 50;

    /// nu = 1/2 + i alpha/2.
    static KernelParams standard(double alpha, int N);
    void validate() const;
};

/// Elliptic function with a double pole at the lattice:
/// 1/z^2 + sum' (1/(z-w)^2 - 1/w^2). Throws within 1e-6 of a pole.
cplx wp(const KernelParams& kp, cplx z);
/// Simple poles at the lattice (residue 1) and at nu + lattice (residue -1):
/// 1/z - 1/(z-nu) + sum' (1/(z-w) - 1/(z-w-nu) + nu/w^2).
cplx wp_nu(const KernelParams& kp, cplx z);

/// Bounds on |full sum - truncated sum|, valid once N + 1 > 2(|z| + |nu|).
/// The wp bound is 16|z|^2 (3 + 2|z|/(N+1)) / N^2: odd terms cancel
/// between w and -w inside the square window. The wp_nu bound is
/// 32|nu| (|z||z-nu|/(N+1) + |2z-nu|) / N. Both return +inf outside the
/// range of validity.
double wp_tail_bound(const KernelParams& kp, cplx z);
double wp_nu_tail_bound(const KernelParams& kp, cplx z);

/// C^2 ramp on [0,1], 0 -> 1, with slope profile (3/2) S(3t) on [0,1/3],
/// 3/2 on [1/3,2/3] and (3/2) S(3-3t) on [2/3,1], S(u) = 3u^2 - 2u^3.
/// The slope never exceeds 3/2.
double ramp(double t);
double ramp_slope(double t);

/// Cutoff equal to 1 on |t| <= delta/2 that falls to 0 at |t| = 3 delta/2
/// along the ramp. Throws for |t| > 3 delta/2.
double chi(double delta, double t);
double chi_slope(double delta, double t);

struct DbarConfig {
    double delta = 0.1;
    double eps = 0.1;       // sigma = eps * delta
    std::size_t nx = 400;   // quadrature cells per bar along x
    std::size_t ny = 400;   // and across
    double c1 = 1.0;        // sup |g| on the strip |Re z| < 5 delta / 2
    double c2 = 1.0;        // sup of the kernel remainder |wp_nu(w) - 1/w|

    double sigma() const { return eps * delta; }
    void validate() const;
};

/// The budget for sup|f|: 6 C1 C2 eps delta / pi
/// + 3 C1 / (pi delta) (2 sqrt2 pi eps delta + 4 eps delta log(3/eps)).
double sup_budget(const DbarConfig& cfg);

using HoloFn = std::function<cplx(cplx)>;

/// g1 = chi(Re z) g + (1 - chi(Re z)) g(0) and phi = d/dzbar g1
/// = chi'(Re z) (g - g(0)) / 2, which vanishes off the two bars
/// delta/2 <= |Re z| <= 3 delta/2.
class Blend {
public:
    /// g must be holomorphic on |Re z| < 5 delta / 2; this is checked by
    /// contour integrals over small circles (relative residual < 1e-8).
    Blend(HoloFn g, double delta);

    cplx g(cplx z) const { return g_(z); }
    cplx g0() const { return g0_; }
    cplx g1(cplx z) const;
    cplx phi(cplx z) const;
    double delta() const { return delta_; }
    double analyticity_residual() const { return residual_; }

    /// max |phi| over the bars of cfg, sampled on a 64 x 8 grid per bar.
    /// Throws if it exceeds 3 C1 / (2 delta).
    double max_phi(const DbarConfig& cfg) const;

private:
    HoloFn g_;
    double delta_;
    cplx g0_;
    double residual_ = 0.0;
};

inline constexpr double kAnalyticityTol = 1e-8;

/// f(z) = -(1/pi) * integral over the bars of phi(s) wp_nu(s - z) dm(s), the
/// solution of d/dzbar f = phi. phi must vanish on the rest of the thin cross
/// around the origin. The Cauchy part 1/(s - z) is integrated by the midpoint
/// rule with exact cell integrals near the target, or by adaptive
/// Gauss-Kronrod when the target is at least delta/4 away; the regular part
/// of the kernel by fixed Gauss rules.
class DbarSolver {
public:
    DbarSolver(HoloFn phi, const KernelParams& kp, const DbarConfig& cfg);

    cplx f(cplx z) const;
    std::vector<cplx> f(const std::vector<cplx>& zs) const;

    /// Central-difference d/dzbar f at z with the given step; the exact cells
    /// are chosen once for the whole stencil.
    cplx dbar(cplx z, double step) const;
    std::vector<cplx> dbar(const std::vector<cplx>& zs, double step) const;

    /// Cell centers of the quadrature grid, bar by bar, row-major in x.
    std::vector<cplx> cell_centers() const;
    /// Evaluation points strictly inside both bars: rows at 1/4, 1/2 and 3/4
    /// of the height and `per_row` columns away from the bar ends.
    std::vector<cplx> interior_nodes(std::size_t per_row) const;
    bool in_support(cplx z) const;
    double distance_to_bars(cplx z) const;

    double hx() const { return hx_; }
    double hy() const { return hy_; }
    const KernelParams& kernel() const { return kp_; }
    const DbarConfig& config() const { return cfg_; }

private:
    struct Node {
        cplx at;
        cplx weight;  // phi * quadrature weight
    };
    cplx cauchy(cplx z, cplx anchor) const;
    cplx cauchy_far(cplx z) const;
    cplx regular(cplx z, int n0, int m0) const;
    cplx evaluate(cplx z, cplx anchor) const;

    KernelParams kp_;
    DbarConfig cfg_;
    HoloFn phi_;
    double hx_ = 0.0, hy_ = 0.0;
    cplx constant_;  // sum' nu / w^2 over the window
    std::vector<Node> cells_;     // midpoint weights, phi(center) hx hy
    std::vector<Node> gauss_;     // nodes for the regular part
};

/// Points of the cross {|Re z| <= sigma/2} U {|Im z| <= sigma/2} inside the
/// fundamental rectangle [-1/2, 1/2) x [-alpha/2, alpha/2): three lines per
/// arm (center and both edges), `along` points per line, plus `near` extra
/// points per line on the horizontal arm over |Re z| <= 2 delta.
std::vector<cplx> cross_grid(double alpha, double sigma, double delta, std::size_t along = 200,
                             std::size_t near = 120);

/// Sampled max of |wp_nu(s - z) - 1/(s - z)| for s in the thin cross around
/// the bars and z on a coarse cross grid.
double remainder_estimate(const KernelParams& kp, const DbarConfig& cfg);

struct DemoReport {
    double alpha = 0.0;
    double sigma = 0.0;
    FreeWord target;
    double rho = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double sup_f = 0.0;
    double budget = 0.0;
    double clearance = 0.0;
    double periodic_defect = 0.0;
    double dbar_residual = 0.0;   // max |d/dzbar h| off the bars
    FreeWord decoded;             // along the vertical circle
    FreeWord decoded_horizontal;  // along the horizontal circle
    PlaneLoop loop;               // h along the vertical circle
};

struct DemoOptions {
    int N = 50;
    std::size_t nx = 400;
    std::size_t ny = 400;
    double delta = 0.1;
    std::size_t loop_samples = 200;
};

/// Holomorphic map from the torus with a hole to C minus {-1, 1} whose
/// restriction to the vertical circle realizes a single generator power
/// a1^n or a2^n (n != 0). Built from g(z) = -+1 + rho exp(2 pi n z / alpha)
/// by the blend and the correction f. Throws ValidationError when the target
/// is not such a power or when sup|f| reaches the clearance.
DemoReport demo_construct(double alpha, double sigma, const FreeWord& target, const DemoOptions& opt = {});

}  // namespace fbt
