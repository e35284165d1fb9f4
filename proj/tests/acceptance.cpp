// Runs the ten acceptance checks and prints one PASS/FAIL line per check.
// Exit status is the number of failed checks.

#include "fbt/bounds.hpp"
#include "fbt/braid.hpp"
#include "fbt/config3.hpp"
#include "fbt/conformal.hpp"
#include "fbt/dbar.hpp"
#include "fbt/errors.hpp"
#include "fbt/word.hpp"
#include "loops.hpp"
#include "oracles/bounds_oracle.hpp"
#include "oracles/braid_census.hpp"
#include "oracles/word_count.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace fbt;

namespace {

const double kPi = std::numbers::pi;
const double kLn3 = std::log(3.0);

// Collects failed expectations of one check.
struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 8) failures.push_back(what);
        else if (!ok) failures.back() = "(more failures)";
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---------------------------------------------------------------- 1

void word_census(Check& c) {
    for (double y : {0.0, kLn3, std::log(6.0), std::log(9.0)}) {
        const auto ws = enumerate_words(y);
        const auto expect = oracle::count_words(y);
        c.expect(ws.size() == expect, "count at Y=" + std::to_string(y) + ": " + std::to_string(ws.size()) +
                                          " vs oracle " + std::to_string(expect));
        c.expect(static_cast<double>(ws.size()) <= 0.5 * std::exp(3 * y) + 1, "count above e^{3Y}/2 + 1");
    }
    c.expect(oracle::count_words(kLn3) == 5, "oracle count at log 3");
    c.expect(oracle::count_words(std::log(6.0)) == 13, "oracle count at log 6");
}

// ---------------------------------------------------------------- 2

void theta_family(Check& c) {
    for (int k = 1; k <= 50; ++k) {
        const auto e = std::to_string(2 * k);
        const double expect = 2 * std::log(3.0 * k);
        const double a = l_minus(theta(parse_braid("s1^-" + e + " d s1^" + e)));
        const double b = l_minus(theta(parse_braid("s2^-" + e + " s1 s2 s2^" + e)));
        c.expect(std::abs(a - expect) <= 1e-12, "first family at k=" + std::to_string(k));
        c.expect(std::abs(b - expect) <= 1e-12, "second family at k=" + std::to_string(k));
    }
}

// ---------------------------------------------------------------- 3

// Integer image in SL(2,Z) together with the exponent sum; faithful on B3.
struct Image {
    __int128 m[4];
    long long exponent;
    bool operator==(const Image& o) const {
        return exponent == o.exponent && m[0] == o.m[0] && m[1] == o.m[1] && m[2] == o.m[2] && m[3] == o.m[3];
    }
};

Image image_of(const BraidWord& b) {
    Image r{{1, 0, 0, 1}, 0};
    auto mul = [&](const __int128 (&g)[4]) {
        const __int128 a = r.m[0] * g[0] + r.m[1] * g[2], bb = r.m[0] * g[1] + r.m[1] * g[3];
        const __int128 cc = r.m[2] * g[0] + r.m[3] * g[2], d = r.m[2] * g[1] + r.m[3] * g[3];
        r.m[0] = a, r.m[1] = bb, r.m[2] = cc, r.m[3] = d;
    };
    static const __int128 s1[4] = {1, 1, 0, 1}, s1i[4] = {1, -1, 0, 1}, s2[4] = {1, 0, -1, 1}, s2i[4] = {1, 0, 1, 1},
                          dl[4] = {0, 1, -1, 0}, dli[4] = {0, -1, 1, 0};
    for (const auto& l : b.letters()) {
        const bool pos = l.exp > 0;
        for (std::int64_t i = 0; i < std::llabs(l.exp); ++i) {
            switch (l.gen) {
                case BraidGen::S1: mul(pos ? s1 : s1i); r.exponent += pos ? 1 : -1; break;
                case BraidGen::S2: mul(pos ? s2 : s2i); r.exponent += pos ? 1 : -1; break;
                case BraidGen::Delta: mul(pos ? dl : dli); r.exponent += pos ? 3 : -3; break;
            }
        }
    }
    return r;
}

void braid_word_problem(Check& c) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(0, 30), gen(0, 2), ex(-2, 2);
    for (int i = 0; i < 10000; ++i) {
        std::vector<BraidLetter> ls;
        for (int n = len(rng), j = 0; j < n; ++j) {
            int e = ex(rng);
            ls.push_back({static_cast<BraidGen>(gen(rng)), e == 0 ? 1 : e});
        }
        const BraidWord b(ls);
        const auto nf = normal_form(b);
        c.expect(image_of(expand(nf)) == image_of(b), "round trip of " + b.str());
        c.expect(normal_form(expand(nf)) == nf, "normal form not idempotent on " + b.str());
    }
    const auto cs = census(kLn3);
    std::set<oracle::M2> images;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& m = matrix_image(cs[i]).matrix.projective();
        images.insert({static_cast<long long>(m.a), static_cast<long long>(m.b), static_cast<long long>(m.c),
                       static_cast<long long>(m.d)});
        for (std::size_t j = 0; j < i; ++j)
            c.expect(!(normal_form(cs[i]) == normal_form(cs[j])), "repeated normal form in the census");
    }
    c.expect(images.size() == cs.size(), "distinct forms share a projective image");
}

// ---------------------------------------------------------------- 4

void braid_census_bound(Check& c) {
    const std::pair<double, std::size_t> frozen[] = {{0.0, 10}, {kLn3, 42}};
    for (const auto& [y, count] : frozen) {
        const auto cs = census(y);
        c.expect(cs.size() == count, "frozen census count at Y=" + std::to_string(y));
        c.expect(static_cast<double>(cs.size()) <= 15 * std::exp(3 * y) * (1 + 1e-12), "count above 15 e^{3Y}");
        c.expect(LogNumber::from_value(static_cast<double>(cs.size())) <= braid_count_bound(y), "count above bound");
        std::set<oracle::M2> mine;
        for (const auto& b : cs) {
            const auto& m = matrix_image(b).matrix.projective();
            mine.insert({static_cast<long long>(m.a), static_cast<long long>(m.b), static_cast<long long>(m.c),
                         static_cast<long long>(m.d)});
        }
        c.expect(mine == oracle::quotient_census(y, 9, 4), "brute-force quotient census disagrees");
    }
    c.expect(std::abs(braid_count_bound(0).value() - 15) < 1e-9, "ceiling at Y=0");
}

// ---------------------------------------------------------------- 5

void conformal_closed_forms(Check& c) {
    for (double R : {2.0, 4.0}) {
        const double exact = 2 * kPi / std::log(R);
        c.expect(rel(lambda_closed_form(AnnulusSpec::round(1, R)), exact) < 1e-15, "closed form");
        double prev = INFINITY;
        for (double h : {1.0 / 50, 1.0 / 100, 1.0 / 200}) {
            const double err = rel(grid_extremal_length(GridDomain::round_annulus(1, R, h)).lambda, exact);
            c.expect(err < prev, "refinement not monotone for R=" + std::to_string(R));
            prev = err;
        }
        c.expect(prev < 0.02, "grid error at h=1/200 for R=" + std::to_string(R));
    }
    const double vertical = grid_extremal_length(GridDomain::rectangle(2, 1, 1.0 / 50)).lambda;
    const double joining = grid_extremal_length(GridDomain::rectangle(2, 1, 1.0 / 50, CurveFamily::Joining)).lambda;
    c.expect(std::abs(vertical * joining - 1) < 0.02, "rectangle duality");
    c.expect(rel(vertical, 2.0) < 0.02, "rectangle value");
}

// ---------------------------------------------------------------- 6

void torus_formulas(Check& c) {
    for (double a : {1.0, 2.0})
        for (double s : {0.1, 0.05}) {
            c.expect(prop1a_lambda3_upper({a, s}) == 4 * (2 * a + 1) / s, "lambda3 upper bound");
            const double ln = prop1a_upper(a, s).ln();
            const double ref = oracle::prop1a_upper_ln(a, s).convert_to<double>();
            c.expect(std::abs(ln - ref) / ref < 1e-9, "count bound against the oracle");
        }
}

// ---------------------------------------------------------------- 7

struct ExpMap {
    double rho, k;
    cplx operator()(cplx z) const { return -1.0 + rho * std::exp(k * z); }
};

void dbar_machinery(Check& c) {
    const double k = 4 * kPi;
    const ExpMap g{1.0 / std::cosh(0.15 * k), k};
    Blend blend(g, 0.1);
    DbarConfig cfg;
    cfg.eps = 0.01;
    cfg.c1 = 1 + g.rho * std::exp(0.25 * k);
    const auto kp = KernelParams::standard(1.0, 50);
    cfg.c2 = remainder_estimate(kp, cfg);
    blend.max_phi(cfg);
    DbarSolver s([&](cplx z) { return blend.phi(z); }, kp, cfg);

    const auto nodes = s.interior_nodes(6);
    const auto d = s.dbar(nodes, std::min(s.hx(), s.hy()) / 16);
    double err = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) err = std::max(err, std::abs(d[i] - blend.phi(nodes[i])));
    c.expect(err < 1e-3, "dbar f differs from phi by " + std::to_string(err));

    const auto grid = cross_grid(1.0, cfg.sigma(), cfg.delta, 10, 10);
    const auto fs = s.f(grid);
    double sup = 0.0, defect = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sup = std::max(sup, std::abs(fs[i]));
        const cplx shift = std::abs(grid[i].real()) <= cfg.sigma() / 2 ? cplx(0, 1) : cplx(1, 0);
        defect = std::max(defect, std::abs(s.f(grid[i] + shift) - fs[i]));
    }
    c.expect(defect < 1e-3, "periodic defect " + std::to_string(defect));
    c.expect(sup < sup_budget(cfg), "sup f above the budget");
}

// ---------------------------------------------------------------- 8

void end_to_end(Check& c) {
    for (const char* w : {"a1^2", "a1^-1"}) {
        const auto target = parse_word(w);
        const auto rep = demo_construct(1.0, 0.01, target, DemoOptions{});
        c.expect(rep.decoded == target, std::string("decoded ") + rep.decoded.str() + " for " + w);
        c.expect(rep.dbar_residual < 1e-3, std::string("holomorphy residual for ") + w);
        c.expect(rep.sup_f < rep.clearance, std::string("correction leaves the clearance for ") + w);
    }
}

// ---------------------------------------------------------------- 9

void bound_calculator(Check& c) {
    c.expect(thm1_bound({0, 1}, 0).exact == "4.5", "4.5");
    c.expect(thm1_bound({1, 0}, 0).exact == "6.75", "6.75");
    c.expect(thm3_bound({0, 1}, 0).exact == "11390625", "15^6");
    c.expect(thm2_bound({0, 1}, 0).exact == "22781250", "2 15^6");
    c.expect(reducible11_bound({2, 3}).exact == "128", "2^{2g+m}");
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> gi(0, 8);
    std::uniform_real_distribution<double> lam(0, 10), dl(1e-3, 1), al(1, 4), sg(0.02, 0.9);
    for (int i = 0; i < 1000; ++i) {
        const SurfaceTopology t{gi(rng), gi(rng)};
        const double l = lam(rng), d = dl(rng);
        const double a = thm3_bound(t, l).value.ln();
        c.expect(std::abs(thm2_bound(t, l).value.ln() - a - t.rank() * std::log(2.0)) <= 1e-12 * std::max(1.0, a),
                 "thm2/thm3 ratio");
        c.expect(thm1_bound({t.g + 1, t.m}, l).value >= thm1_bound(t, l).value, "thm1 monotone in g");
        c.expect(thm1_bound({t.g, t.m + 1}, l).value >= thm1_bound(t, l).value, "thm1 monotone in m");
        c.expect(thm1_bound(t, l + d).value >= thm1_bound(t, l).value, "thm1 monotone in lambda");
        c.expect(thm2_bound(t, l + d).value >= thm2_bound(t, l).value, "thm2 monotone in lambda");
        c.expect(thm3_bound(t, l + d).value >= thm3_bound(t, l).value, "thm3 monotone in lambda");
        const double al0 = al(rng), s = sg(rng);
        c.expect(prop1a_upper(al0 + d, s) >= prop1a_upper(al0, s), "prop1a monotone in alpha");
        c.expect(prop1a_upper(al0, 0.9 * s) >= prop1a_upper(al0, s), "prop1a monotone in sigma");
    }
}

// ---------------------------------------------------------------- 10

void decoders(Check& c) {
    using loops::kLine;
    c.expect(equal(decode_braid(loops::rotation(kLine, 0.0, kPi)), parse_braid("d")), "half rotation");
    c.expect(equal(decode_braid(loops::rotation(kLine, 0.0, 2 * kPi)), parse_braid("d^2")), "full rotation");
    c.expect(decode_word(loops::circle(-1.0, 0.3, 0.0, 1.0)) == parse_word("a1"), "circle about -1");
    c.expect(decode_word(loops::circle(1.0, 0.3, 0.0, 1.0)) == parse_word("a2"), "circle about 1");
    c.expect(decode_word(loops::circle(-1.0, 0.3, 0.0, -1.0)) == parse_word("a1^-1"), "clockwise about -1");
    c.expect(decode_word(loops::circle(1.0, 0.3, 0.0, -1.0)) == parse_word("a2^-1"), "clockwise about 1");
    const std::vector<ConfigLoop> suite{loops::rotation(kLine, 0.0, kPi), loops::exchange(kLine, 0, true),
                                        loops::exchange(kLine, 1, false), loops::rotation(kLine, 0.0, 2 * kPi)};
    for (const auto& x : suite) {
        const auto bx = decode_braid(x);
        c.expect(equal(decode_braid(reversed(x)), inverse(bx)), "inversion law");
        for (const auto& y : suite) c.expect(equal(decode_braid(compose(x, y)), concat(bx, decode_braid(y))), "composition law");
    }
    const auto fig = compose(loops::circle(-1.0, 1.0, 0.0, 1.0), loops::circle(1.0, 1.0, kPi, 1.0));
    c.expect(decode_word(fig) == parse_word("a1 a2"), "figure eight");
    c.expect(decode_word(reversed(fig)) == parse_word("a2^-1 a1^-1"), "reversed figure eight");
}

}  // namespace

int main() {
    struct Item {
        int id;
        const char* name;
        double limit;
        std::function<void(Check&)> run;
    };
    const std::vector<Item> items{
        {1, "word census", 1, word_census},
        {2, "theta identity family", 1, theta_family},
        {3, "braid word problem", 10, braid_word_problem},
        {4, "braid census bound", 30, braid_census_bound},
        {5, "conformal closed forms", 30, conformal_closed_forms},
        {6, "torus count formulas", 1, torus_formulas},
        {7, "dbar machinery", 60, dbar_machinery},
        {8, "end-to-end monodromy", 60, end_to_end},
        {9, "bound calculator", 5, bound_calculator},
        {10, "decoders", 5, decoders},
    };
    int failed = 0;
    for (const auto& it : items) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            it.run(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > it.limit) c.failures.push_back("runtime above " + std::to_string(it.limit) + " s");
        const bool ok = c.failures.empty();
        failed += !ok;
        std::printf("criterion %2d %-24s %s  %.2f s\n", it.id, it.name, ok ? "PASS" : "FAIL", secs);
        for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
    }
    return failed;
}
