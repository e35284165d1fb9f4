#include "fbt/dbar.hpp"

#include "fbt/errors.hpp"
#include "fbt/parallel.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fbt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleGap = 1e-6;

inline cplx recip(cplx a) {
    const double n = a.real() * a.real() + a.imag() * a.imag();
    return {a.real() / n, -a.imag() / n};
}

std::string show(cplx z) {
    std::ostringstream os;
    os.precision(6);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

void check_poles(const KernelParams& kp, cplx z, bool shifted) {
    const auto n = std::lround(z.real() - (shifted ? kp.nu.real() : 0.0));
    const auto m = std::lround((z.imag() - (shifted ? kp.nu.imag() : 0.0)) / kp.alpha);
    if (std::abs(n) > kp.N || std::abs(m) > kp.N) return;
    const cplx pole = cplx(static_cast<double>(n), kp.alpha * static_cast<double>(m)) + (shifted ? kp.nu : 0.0);
    if (std::abs(z - pole) < kPoleGap)
        throw ValidationError("argument " + show(z) + " is within 1e-6 of the pole at " + show(pole));
}

// sum' nu/w^2 over the window
cplx window_constant(const KernelParams& kp) {
    cplx acc = 0.0;
    for (int m = -kp.N; m <= kp.N; ++m)
        for (int n = -kp.N; n <= kp.N; ++n)
            if (n != 0 || m != 0) {
                const cplx w(n, kp.alpha * m);
                acc += recip(w * w);
            }
    return kp.nu * acc;
}

// sum over the window with the term at lattice point (n0, m0) dropped from
// the 1/(z-w) part; (0, 0) gives wp_nu(z) - 1/z
cplx dipole_sum(const KernelParams& kp, cplx z, int n0, int m0, cplx constant) {
    cplx acc = 0.0;
    for (int m = -kp.N; m <= kp.N; ++m) {
        const double wy = kp.alpha * m;
        for (int n = -kp.N; n <= kp.N; ++n) {
            if (n == n0 && m == m0) continue;
            const cplx a(z.real() - n, z.imag() - wy);
            acc += recip(a * (a - kp.nu));
        }
    }
    const cplx a(z.real() - n0, z.imag() - kp.alpha * m0);
    return constant - kp.nu * acc - recip(a - kp.nu);
}

}  // namespace

// ---------------------------------------------------------------- kernels

KernelParams KernelParams::standard(double alpha, int N) {
    KernelParams kp{alpha, cplx(0.5, alpha / 2), N};
    kp.validate();
    return kp;
}

void KernelParams::validate() const {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 1");
    if (N < 1) throw ValidationError("truncation N must be positive");
    const double n = std::round(nu.real()), m = std::round(nu.imag() / alpha);
    if (std::abs(nu - cplx(n, alpha * m)) < 1e-12) throw ValidationError("nu lies on the lattice");
}

cplx wp(const KernelParams& kp, cplx z) {
    kp.validate();
    check_poles(kp, z, false);
    cplx acc = recip(z * z);
    for (int m = -kp.N; m <= kp.N; ++m) {
        for (int n = -kp.N; n <= kp.N; ++n) {
            if (n == 0 && m == 0) continue;
            const cplx w(n, kp.alpha * m);
            const cplx a = z - w;
            acc += recip(a * a) - recip(w * w);
        }
    }
    return acc;
}

cplx wp_nu(const KernelParams& kp, cplx z) {
    kp.validate();
    check_poles(kp, z, false);
    check_poles(kp, z, true);
    return recip(z) + dipole_sum(kp, z, 0, 0, window_constant(kp));
}

double wp_tail_bound(const KernelParams& kp, cplx z) {
    const double r = std::abs(z), N = kp.N;
    if (!(N + 1 > 2 * r)) return INFINITY;
    return 16 * r * r * (3 + 2 * r / (N + 1)) / (N * N);
}

double wp_nu_tail_bound(const KernelParams& kp, cplx z) {
    const double r = std::abs(z), v = std::abs(kp.nu), N = kp.N;
    if (!(N + 1 > 2 * (r + v))) return INFINITY;
    return 32 * v * (r * std::abs(z - kp.nu) / (N + 1) + std::abs(2.0 * z - kp.nu)) / N;
}

// ---------------------------------------------------------------- cutoff

namespace {
double smooth(double u) { return u * u * (3 - 2 * u); }
double first_third(double t) {
    const double u = 3 * t;
    return 0.5 * (u * u * u - 0.5 * u * u * u * u);
}
}  // namespace

double ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (t <= 1.0 / 3) return first_third(t);
    if (t <= 2.0 / 3) return 0.25 + 1.5 * (t - 1.0 / 3);
    return 1.0 - first_third(1.0 - t);
}

double ramp_slope(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    if (t <= 1.0 / 3) return 1.5 * smooth(3 * t);
    if (t <= 2.0 / 3) return 1.5;
    return 1.5 * smooth(3 - 3 * t);
}

double chi(double delta, double t) {
    if (!(std::abs(t) <= 1.5 * delta)) throw ValidationError("cutoff argument outside [-3 delta/2, 3 delta/2]");
    if (t < -delta / 2) return ramp(t / delta + 1.5);
    if (t > delta / 2) return ramp(-t / delta + 1.5);
    return 1.0;
}

double chi_slope(double delta, double t) {
    if (!(std::abs(t) <= 1.5 * delta)) throw ValidationError("cutoff argument outside [-3 delta/2, 3 delta/2]");
    if (t < -delta / 2) return ramp_slope(t / delta + 1.5) / delta;
    if (t > delta / 2) return -ramp_slope(-t / delta + 1.5) / delta;
    return 0.0;
}

void DbarConfig::validate() const {
    if (!(delta > 0.0 && delta <= 0.2)) throw ValidationError("delta must lie in (0, 0.2]");
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0, 1)");
    if (nx < 8 || ny < 2) throw ValidationError("quadrature grid too coarse to resolve the singular cells");
    if (!(c1 > 0.0) || !(c2 >= 0.0)) throw ValidationError("C1 must be positive and C2 non-negative");
}

double sup_budget(const DbarConfig& cfg) {
    cfg.validate();
    const double e = cfg.eps, d = cfg.delta;
    return 6 * cfg.c1 * cfg.c2 * e * d / kPi +
           3 * cfg.c1 / (kPi * d) * (2 * std::numbers::sqrt2 * kPi * e * d + 4 * e * d * std::log(3 / e));
}

// ---------------------------------------------------------------- blend

Blend::Blend(HoloFn g, double delta) : g_(std::move(g)), delta_(delta) {
    if (!(delta > 0.0)) throw ValidationError("delta must be positive");
    g0_ = g_(0.0);
    constexpr int kPts = 64;
    const double r = delta / 2;
    for (double cx : {-delta, 0.0, delta}) {
        for (double cy : {-delta, 0.0, delta}) {
            cplx sum = 0.0;
            double scale = 0.0;
            for (int k = 0; k < kPts; ++k) {
                const cplx e = std::polar(1.0, 2 * kPi * k / kPts);
                const cplx v = g_(cplx(cx, cy) + r * e);
                sum += v * e;
                scale = std::max(scale, std::abs(v));
            }
            residual_ = std::max(residual_, std::abs(sum) / (kPts * std::max(scale, 1e-300)));
        }
    }
    if (!(residual_ < kAnalyticityTol)) throw ValidationError("sampled map failed the analyticity check");
}

cplx Blend::g1(cplx z) const {
    if (std::abs(z.real()) >= 1.5 * delta_) return g0_;
    const double c = chi(delta_, z.real());
    return g0_ + c * (g_(z) - g0_);
}

cplx Blend::phi(cplx z) const {
    if (std::abs(z.real()) >= 1.5 * delta_ || std::abs(z.real()) <= 0.5 * delta_) return 0.0;
    return 0.5 * chi_slope(delta_, z.real()) * (g_(z) - g0_);
}

double Blend::max_phi(const DbarConfig& cfg) const {
    cfg.validate();
    const double s = cfg.sigma();
    double best = 0.0;
    for (int side : {-1, 1})
        for (int i = 0; i <= 64; ++i)
            for (int j = 0; j <= 8; ++j) {
                const double x = side * delta_ * (0.5 + i / 64.0), y = s * (j / 8.0 - 0.5);
                best = std::max(best, std::abs(phi(cplx(x, y))));
            }
    if (best > 1.5 * cfg.c1 / delta_ * (1 + 1e-12))
        throw ValidationError("max |phi| exceeds 3 C1 / (2 delta); C1 is too small for this map");
    return best;
}

// ---------------------------------------------------------------- solver

namespace {

// integral of 1/t over [u1,u2] x [v1,v2] in t = u + iv coordinates, from
// the antiderivative -i (t L(t) - t) with a branch L of log that is
// continuous on each closed quadrant piece
cplx rect_piece(double u1, double u2, double v1, double v2) {
    const bool left = u2 <= 0.0;
    auto F = [left](double u, double v) -> cplx {
        const cplx t(u, v);
        if (u == 0.0 && v == 0.0) return 0.0;
        const cplx L = left ? std::log(-t) + cplx(0, kPi) : std::log(t);
        return cplx(0, -1) * (t * L - t);
    };
    return F(u2, v2) - F(u1, v2) - F(u2, v1) + F(u1, v1);
}

cplx rect_cauchy(double u1, double u2, double v1, double v2) {
    double us[3] = {u1, u2, u2}, vs[3] = {v1, v2, v2};
    int nu = 1, nv = 1;
    if (u1 < 0.0 && u2 > 0.0) us[1] = 0.0, nu = 2;
    if (v1 < 0.0 && v2 > 0.0) vs[1] = 0.0, nv = 2;
    cplx acc = 0.0;
    for (int a = 0; a < nu; ++a)
        for (int b = 0; b < nv; ++b) acc += rect_piece(us[a], us[a + 1], vs[b], vs[b + 1]);
    return acc;
}

template <int P>
std::vector<std::pair<double, double>> gauss_rule() {
    using G = boost::math::quadrature::gauss<double, P>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.emplace_back(x[i], w[i]);
        if (x[i] != 0.0) out.emplace_back(-x[i], w[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

DbarSolver::DbarSolver(HoloFn phi, const KernelParams& kp, const DbarConfig& cfg)
    : kp_(kp), cfg_(cfg), phi_(std::move(phi)) {
    kp_.validate();
    cfg_.validate();
    constant_ = window_constant(kp_);
    const double d = cfg_.delta, s = cfg_.sigma();
    hx_ = d / static_cast<double>(cfg_.nx);
    hy_ = s / static_cast<double>(cfg_.ny);
    cells_.reserve(2 * cfg_.nx * cfg_.ny);
    for (int side : {-1, 1})
        for (std::size_t j = 0; j < cfg_.ny; ++j)
            for (std::size_t i = 0; i < cfg_.nx; ++i) {
                const cplx c(side * (d / 2 + (i + 0.5) * hx_), -s / 2 + (j + 0.5) * hy_);
                cells_.push_back({c, phi_(c) * hx_ * hy_});
            }
    // the regular part: one panel per third of each bar, where phi is smooth
    const auto gx = gauss_rule<8>();
    const auto gy = gauss_rule<2>();
    for (int side : {-1, 1})
        for (int p = 0; p < 3; ++p) {
            const double a = d / 2 + p * d / 3, b = a + d / 3;
            for (auto [xi, wi] : gx)
                for (auto [yj, wj] : gy) {
                    const cplx at(side * ((a + b) / 2 + (b - a) / 2 * xi), s / 2 * yj);
                    gauss_.push_back({at, phi_(at) * (wi * wj * (b - a) / 2 * s / 2)});
                }
        }
}

double DbarSolver::distance_to_bars(cplx z) const {
    const double d = cfg_.delta, s = cfg_.sigma();
    const double ax = std::abs(z.real());
    const double dx = ax < d / 2 ? d / 2 - ax : (ax > 1.5 * d ? ax - 1.5 * d : 0.0);
    const double dy = std::max(0.0, std::abs(z.imag()) - s / 2);
    return std::hypot(dx, dy);
}

bool DbarSolver::in_support(cplx z) const {
    return distance_to_bars(z) == 0.0;
}

cplx DbarSolver::cauchy_far(cplx z) const {
    const double d = cfg_.delta, s = cfg_.sigma();
    static const auto gy = gauss_rule<4>();
    cplx acc = 0.0;
    for (int side : {-1, 1})
        for (int p = 0; p < 3; ++p) {
            const double a = d / 2 + p * d / 3, b = a + d / 3;
            auto column = [&](double x) {
                cplx c = 0.0;
                for (auto [yj, wj] : gy) {
                    const cplx at(x, s / 2 * yj);
                    c += wj * s / 2 * phi_(at) * recip(at - z);
                }
                return c;
            };
            const double lo = side > 0 ? a : -b, hi = side > 0 ? b : -a;
            acc += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(column, lo, hi, 12, 1e-13);
        }
    return acc;
}

cplx DbarSolver::cauchy(cplx z, cplx anchor) const {
    const double H = 2.5 * std::max(hx_, hy_);
    cplx acc = 0.0;
    for (const auto& c : cells_) {
        if (std::abs(c.at.real() - anchor.real()) <= H && std::abs(c.at.imag() - anchor.imag()) <= H) {
            const cplx t0 = c.at - z;
            acc += c.weight / (hx_ * hy_) *
                   rect_cauchy(t0.real() - hx_ / 2, t0.real() + hx_ / 2, t0.imag() - hy_ / 2, t0.imag() + hy_ / 2);
        } else {
            acc += c.weight * recip(c.at - z);
        }
    }
    return acc;
}

cplx DbarSolver::regular(cplx z, int n0, int m0) const {
    cplx acc = 0.0;
    for (const auto& g : gauss_) acc += g.weight * dipole_sum(kp_, g.at - z, n0, m0, constant_);
    return acc;
}

cplx DbarSolver::evaluate(cplx z, cplx anchor) const {
    // move the target next to the support; the kernel term at that lattice
    // point becomes the Cauchy part, everything else is smooth
    const int n0 = static_cast<int>(std::lround(-anchor.real()));
    const int m0 = static_cast<int>(std::lround(-anchor.imag() / kp_.alpha));
    if (std::abs(n0) > kp_.N || std::abs(m0) > kp_.N) throw ValidationError("evaluation point outside the truncation window");
    const cplx shift(n0, kp_.alpha * m0);
    const cplx zs = z + shift, as = anchor + shift;
    const cplx c = distance_to_bars(as) > cfg_.delta / 4 ? cauchy_far(zs) : cauchy(zs, as);
    return -(c + regular(z, n0, m0)) / kPi;
}

cplx DbarSolver::f(cplx z) const { return evaluate(z, z); }

std::vector<cplx> DbarSolver::f(const std::vector<cplx>& zs) const {
    std::vector<cplx> out(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) { out[i] = evaluate(zs[i], zs[i]); });
    return out;
}

cplx DbarSolver::dbar(cplx z, double step) const {
    if (!(step > 0.0)) throw ValidationError("difference step must be positive");
    const cplx dx = (evaluate(z + step, z) - evaluate(z - step, z)) / (2 * step);
    const cplx dy = (evaluate(z + cplx(0, step), z) - evaluate(z - cplx(0, step), z)) / (2 * step);
    return 0.5 * (dx + cplx(0, 1) * dy);
}

std::vector<cplx> DbarSolver::dbar(const std::vector<cplx>& zs, double step) const {
    std::vector<cplx> out(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) { out[i] = dbar(zs[i], step); });
    return out;
}

std::vector<cplx> DbarSolver::cell_centers() const {
    std::vector<cplx> out;
    out.reserve(cells_.size());
    for (const auto& c : cells_) out.push_back(c.at);
    return out;
}

std::vector<cplx> DbarSolver::interior_nodes(std::size_t per_row) const {
    std::vector<cplx> out;
    const std::size_t nx = cfg_.nx, ny = cfg_.ny;
    for (int side : {-1, 1})
        for (std::size_t r : {ny / 4, ny / 2, (3 * ny) / 4})
            for (std::size_t k = 1; k <= per_row; ++k) {
                const std::size_t i = k * nx / (per_row + 1);
                out.push_back(cells_[(side < 0 ? 0 : nx * ny) + r * nx + i].at);
            }
    return out;
}

// ---------------------------------------------------------------- sampling

std::vector<cplx> cross_grid(double alpha, double sigma, double delta, std::size_t along, std::size_t near) {
    std::vector<cplx> out;
    for (double off : {-sigma / 2, 0.0, sigma / 2}) {
        for (std::size_t k = 0; k < along; ++k) {
            const double u = -0.5 + static_cast<double>(k) / static_cast<double>(along);
            out.emplace_back(off, alpha * u);
            out.emplace_back(u, off);
        }
        for (std::size_t k = 0; k <= near && near > 0; ++k)
            out.emplace_back(-2 * delta + 4 * delta * static_cast<double>(k) / static_cast<double>(near), off);
    }
    return out;
}

double remainder_estimate(const KernelParams& kp, const DbarConfig& cfg) {
    kp.validate();
    cfg.validate();
    const double d = cfg.delta, s = cfg.sigma();
    std::vector<cplx> sources;
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 2; ++j) sources.emplace_back(-1.5 * d + d * i / 2, s * (j / 2.0 - 0.5));
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 4; ++j) sources.emplace_back(s * (i / 2.0 - 0.5), d * (j / 4.0 - 0.5));
    const auto targets = cross_grid(kp.alpha, s, d, 40, 0);
    const cplx constant = window_constant(kp);
    std::vector<double> best(targets.size(), 0.0);
    parallel_for(targets.size(), [&](std::size_t t) {
        for (cplx src : sources) best[t] = std::max(best[t], std::abs(dipole_sum(kp, src - targets[t], 0, 0, constant)));
    });
    return *std::max_element(best.begin(), best.end());
}

// ---------------------------------------------------------------- demo

DemoReport demo_construct(double alpha, double sigma, const FreeWord& target, const DemoOptions& opt) {
    if (target.terms().size() != 1) throw ValidationError("demo target must be a nonzero power of a1 or a2");
    const int gen = target.terms()[0].gen;
    const auto n = target.terms()[0].exp;
    if (gen != 1 && gen != 2) throw ValidationError("demo target must be a nonzero power of a1 or a2");
    TorusWithHole torus{alpha, sigma};
    torus.validate();

    DemoReport rep;
    rep.alpha = alpha;
    rep.sigma = sigma;
    rep.target = target;

    const double delta = opt.delta;
    const double k = 2 * kPi * static_cast<double>(n) / alpha;
    const double spread = 1.5 * delta * std::abs(k);
    rep.rho = 1.0 / std::cosh(spread);
    const cplx center = gen == 1 ? -1.0 : 1.0;
    const double rho = rep.rho;
    Blend blend([=](cplx z) { return center + rho * std::exp(k * z); }, delta);

    DbarConfig cfg;
    cfg.delta = delta;
    cfg.eps = sigma / delta;
    cfg.nx = opt.nx;
    cfg.ny = opt.ny;
    const auto kp = KernelParams::standard(alpha, opt.N);
    rep.c1 = 1.0 + rho * std::exp(2.5 * delta * std::abs(k));
    cfg.c1 = rep.c1;
    rep.c2 = remainder_estimate(kp, cfg);
    cfg.c2 = rep.c2;
    rep.budget = sup_budget(cfg);
    blend.max_phi(cfg);

    DbarSolver solver([&blend](cplx z) { return blend.phi(z); }, kp, cfg);

    const auto grid = cross_grid(alpha, sigma, delta, 100, 60);
    const auto fs = solver.f(grid);
    rep.clearance = INFINITY;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx v = blend.g1(grid[i]);
        rep.sup_f = std::max(rep.sup_f, std::abs(fs[i]));
        rep.clearance = std::min({rep.clearance, std::abs(v - 1.0), std::abs(v + 1.0)});
    }
    if (!(rep.sup_f < rep.clearance)) {
        std::ostringstream os;
        os << "eps too large: sup|f| = " << rep.sup_f << " does not stay below the clearance " << rep.clearance;
        throw ValidationError(os.str());
    }

    const std::size_t M = std::max<std::size_t>(opt.loop_samples, 64 * static_cast<std::size_t>(std::abs(n)));
    std::vector<cplx> vert(M + 1), horiz(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(M);
        vert[i] = cplx(0, alpha * u);
        horiz[i] = cplx(u, 0);
    }
    const auto fv = solver.f(vert);
    const auto fh = solver.f(horiz);
    rep.periodic_defect = std::max(std::abs(fv[M] - fv[0]), std::abs(fh[M] - fh[0]));
    PlaneLoop hl;
    for (std::size_t i = 0; i <= M; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(M);
        rep.loop.t.push_back(u);
        rep.loop.samples.push_back(blend.g1(vert[i]) - fv[i]);
        hl.t.push_back(u);
        hl.samples.push_back(blend.g1(horiz[i]) - fh[i]);
    }
    rep.loop.samples[M] = rep.loop.samples[0];
    hl.samples[M] = hl.samples[0];
    rep.decoded = decode_word(rep.loop);
    rep.decoded_horizontal = decode_word(hl);

    // holomorphy of h away from the bars
    const double step = sigma / 16;
    std::vector<cplx> probes;
    for (const cplx z : cross_grid(alpha, sigma, delta, 16, 16))
        if (solver.distance_to_bars(z) > 2 * step) probes.push_back(z);
    const auto df = solver.dbar(probes, step);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const cplx z = probes[i];
        const cplx dg = 0.5 * ((blend.g1(z + step) - blend.g1(z - step)) / (2 * step) +
                               cplx(0, 1) * (blend.g1(z + cplx(0, step)) - blend.g1(z - cplx(0, step))) / (2 * step));
        rep.dbar_residual = std::max(rep.dbar_residual, std::abs(dg - df[i]));
    }
    return rep;
}

}  // namespace fbt
