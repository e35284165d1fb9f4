#include "doctest.h"
#include "fbt/config3.hpp"
#include "fbt/errors.hpp"
#include "loops.hpp"

#include <random>
#include <sstream>

using namespace fbt;
using loops::kLine;

namespace {
const double kPi = std::numbers::pi;
BraidWord B(const char* s) { return parse_braid(s); }
}  // namespace

TEST_CASE("collinearity") {
    CHECK(in_H(Triple(-1.0, 0.0, 1.0)));
    CHECK_FALSE(in_H(Triple(-1.0, cplx(0, 1), 1.0)));
    CHECK(in_H(Triple(0.0, cplx(1, 1), cplx(2, 2))));
    CHECK_THROWS_AS(Triple(1.0, 1.0, 2.0), ValidationError);
}

TEST_CASE("collinearity is affine invariant") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        cplx a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng));
        if (i % 2) c = a + g(rng) * (b - a);  // collinear half of the time
        cplx scale(g(rng), g(rng)), shift(g(rng), g(rng));
        Triple t(a, b, c);
        Triple u(scale * a + shift, scale * b + shift, scale * c + shift);
        double tol = 1e-9;
        bool inside = in_H(t, tol);
        CHECK(in_H(u, tol * 10) == inside);
    }
}

TEST_CASE("affine normalization") {
    auto n = affine_normalize(Triple(0.0, 2.0, cplx(1, 1)), 0.0, 2.0);
    CHECK(n.image[0] == cplx(-1, 0));
    CHECK(n.image[2] == cplx(1, 0));
    CHECK(std::abs(n.image[1] - cplx(0, 1)) < 1e-15);

    auto id = affine_normalize(Triple(-1.0, cplx(0.3, 0.2), 1.0), -1.0, 1.0);
    CHECK(id.image[1] == cplx(0.3, 0.2));

    cplx a(0.3, -1.2), b(2.1, 0.4);
    auto col = affine_normalize(Triple(a, b, a + 0.37 * (b - a)), a, b);
    CHECK(std::abs(col.image[1].imag()) < 1e-14);
    CHECK(col.map(a) == cplx(-1, 0));
    CHECK(col.map(b) == cplx(1, 0));
    CHECK_THROWS_AS(affine_normalize(Triple(a, b, 0.0), a, a), ValidationError);
}

TEST_CASE("rotations decode to half twists") {
    auto half = decode_braid(loops::rotation(kLine, 0.0, kPi));
    CHECK(equal(half.with_ambient(Ambient::ModCenter), B("@mod-center d")));
    CHECK(equal(half, B("d")));
    auto full = decode_braid(loops::rotation(kLine, 0.0, 2 * kPi));
    CHECK(equal(full, B("d^2")));
    CHECK(matrix_image(full).exponent_sum == 6);
    CHECK(equal(decode_braid(loops::rotation(kLine, 0.0, -kPi)), B("d^-1")));
    CHECK(equal(decode_braid(loops::rotation({cplx(0, 0), cplx(1, 1), cplx(2, -0.5)}, cplx(0.5, 0.1), 4 * kPi)),
                B("d^4")));
    CHECK(decode_braid(loops::constant(kLine)).letters().empty());
}

TEST_CASE("exchanges decode to generators") {
    CHECK(equal(decode_braid(loops::exchange(kLine, 0, true)), B("s1")));
    CHECK(equal(decode_braid(loops::exchange(kLine, 1, true)), B("s2")));
    CHECK(equal(decode_braid(loops::exchange(kLine, 0, false)), B("s1^-1")));
}

TEST_CASE("composition, inversion and refinement") {
    std::vector<ConfigLoop> suite{loops::rotation(kLine, 0.0, kPi), loops::exchange(kLine, 0, true),
                                  loops::exchange(kLine, 1, false), loops::rotation(kLine, 0.0, 2 * kPi)};
    for (const auto& x : suite) {
        auto bx = decode_braid(x);
        CHECK(equal(decode_braid(reversed(x)), inverse(bx)));
        CHECK(equal(decode_braid(loops::refine(x)), bx));
        for (const auto& y : suite) CHECK(equal(decode_braid(compose(x, y)), concat(bx, decode_braid(y))));
    }
}

TEST_CASE("tracking violations name the sample") {
    ConfigLoop jump{{0.0, 1.0, 2.0}, {kLine, {cplx(-1, 0), cplx(0.9, 0), cplx(1, 0)}, kLine}};
    CHECK_THROWS_WITH_AS(decode_braid(jump), "tracking condition violated at sample 1", ValidationError);
    ConfigLoop open{{0.0, 1.0}, {kLine, {cplx(-1, 0), cplx(0.1, 0), cplx(1, 0)}}};
    CHECK_THROWS_AS(decode_braid(open), ValidationError);
}

TEST_CASE("puncture circles") {
    for (double eps : {0.1, 0.3, 0.5}) {
        CHECK(decode_word(loops::circle(1.0, eps, 0.0, 1.0)) == parse_word("a2"));
        CHECK(decode_word(loops::circle(1.0, eps, 0.0, -1.0)) == parse_word("a2^-1"));
        CHECK(decode_word(loops::circle(-1.0, eps, 0.0, 1.0)) == parse_word("a1"));
        CHECK(decode_word(loops::circle(-1.0, eps, 0.0, -1.0)) == parse_word("a1^-1"));
        CHECK(decode_word(loops::circle(-1.0, eps, 1.0, 3.0)) == parse_word("a1^3"));
    }
    auto fig = compose(loops::circle(-1.0, 1.0, 0.0, 1.0), loops::circle(1.0, 1.0, kPi, 1.0));
    CHECK(decode_word(fig) == parse_word("a1 a2"));
    CHECK(decode_word(reversed(fig)) == parse_word("a2^-1 a1^-1"));
    CHECK(decode_word(loops::refine(fig)) == parse_word("a1 a2"));
    CHECK(decode_word(loops::circle(0.0, 3.0, 0.0, 1.0)) == parse_word("a1 a2"));
    CHECK(decode_word(loops::circle(0.0, 3.0, kPi / 2, 1.0)) == parse_word("a1 a2"));
    CHECK(decode_word(loops::circle(0.0, 0.5, 0.0, 1.0)).is_identity());
    CHECK_THROWS_AS(decode_word(loops::circle(1.0, 1e-10, 0.0, 1.0)), ValidationError);
}

TEST_CASE("csv readers") {
    std::istringstream cfg("t,re1,im1,re2,im2,re3,im3\n0,-1,0,0,0,1,0\n1,-1,0,0,0,1,0\n");
    auto c = read_config_loop(cfg);
    CHECK(c.samples.size() == 2);
    std::istringstream pl("t,re,im\n0,0.5,0\n1,0.5,0\n");
    CHECK(read_plane_loop(pl).samples.size() == 2);
    std::istringstream bad("t,x,y\n");
    CHECK_THROWS_AS(read_plane_loop(bad), ValidationError);
    std::istringstream short_row("t,re,im\n0,1\n");
    CHECK_THROWS_AS(read_plane_loop(short_row), ValidationError);
}
