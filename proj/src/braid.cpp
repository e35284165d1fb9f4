#include "fbt/braid.hpp"

#include "fbt/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace fbt {

namespace {

const char* gen_name(BraidGen g) {
    switch (g) {
        case BraidGen::S1: return "s1";
        case BraidGen::S2: return "s2";
        case BraidGen::Delta: return "d";
    }
    return "?";
}

std::int64_t to_i64(const BigInt& x, const char* what) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw ValidationError(std::string(what) + " exceeds 64-bit range");
    return static_cast<std::int64_t>(x);
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// nearest integer to x / y; callers never hit exact halves
BigInt round_div(const BigInt& x, const BigInt& y) {
    BigInt q = x / y;
    BigInt r = x - q * y;
    if (2 * abs_big(r) > abs_big(y)) q += ((x < 0) == (y < 0)) ? 1 : -1;
    return q;
}

Mat2 s1_pow(const BigInt& k) { return Mat2{1, k, 0, 1}; }
Mat2 s2_pow(const BigInt& k) { return Mat2{1, 0, -k, 1}; }

Mat2 delta_pow(std::int64_t k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return Mat2{1, 0, 0, 1};
        case 1: return Mat2{0, 1, -1, 0};
        case 2: return Mat2{-1, 0, 0, -1};
        default: return Mat2{0, -1, 1, 0};
    }
}

struct Mod2 {
    int a, b, c, d;
    bool operator==(const Mod2&) const = default;
};

Mod2 mod2(const Mat2& m) {
    auto bit = [](const BigInt& x) { return static_cast<int>(abs_big(x) % 2); };
    return {bit(m.a), bit(m.b), bit(m.c), bit(m.d)};
}

}  // namespace

// ---------------------------------------------------------------- words

BraidWord::BraidWord(std::vector<BraidLetter> letters, Ambient ambient) : ambient_(ambient) {
    for (const auto& l : letters) {
        if (l.exp == 0) continue;
        if (!letters_.empty() && letters_.back().gen == l.gen) {
            letters_.back().exp += l.exp;
            if (letters_.back().exp == 0) letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }
}

std::string BraidWord::str() const {
    std::ostringstream os;
    if (ambient_ == Ambient::ModCenter) os << "@mod-center";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i || ambient_ == Ambient::ModCenter) os << ' ';
        os << gen_name(letters_[i].gen) << '^' << letters_[i].exp;
    }
    return os.str();
}

BraidWord parse_braid(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string tok;
    Ambient ambient = Ambient::B3;
    std::vector<BraidLetter> letters;
    bool first = true;
    while (is >> tok) {
        if (tok == "@mod-center") {
            if (!first) throw ValidationError("@mod-center must lead the braid");
            ambient = Ambient::ModCenter;
            first = false;
            continue;
        }
        first = false;
        auto caret = tok.find('^');
        std::string head = tok.substr(0, caret);
        BraidGen g;
        if (head == "s1") g = BraidGen::S1;
        else if (head == "s2") g = BraidGen::S2;
        else if (head == "d") g = BraidGen::Delta;
        else throw ValidationError("bad braid token '" + tok + "'");
        std::int64_t exp = 1;
        if (caret != std::string::npos) {
            std::string e = tok.substr(caret + 1);
            const char* begin = e.data();
            if (!e.empty() && e[0] == '+') ++begin;
            auto [p, ec] = std::from_chars(begin, e.data() + e.size(), exp);
            if (e.empty() || ec != std::errc() || p != e.data() + e.size())
                throw ValidationError("bad exponent in token '" + tok + "'");
            if (exp == 0) throw ValidationError("zero exponent in token '" + tok + "'");
        }
        letters.push_back({g, exp});
    }
    return BraidWord(std::move(letters), ambient);
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
    if (a.ambient() != b.ambient()) throw ValidationError("ambient mismatch");
    std::vector<BraidLetter> ls = a.letters();
    ls.insert(ls.end(), b.letters().begin(), b.letters().end());
    return BraidWord(std::move(ls), a.ambient());
}

BraidWord inverse(const BraidWord& b) {
    std::vector<BraidLetter> ls(b.letters().rbegin(), b.letters().rend());
    for (auto& l : ls) l.exp = -l.exp;
    return BraidWord(std::move(ls), b.ambient());
}

BraidWord pure_braid(const FreeWord& w, Ambient ambient) {
    std::vector<BraidLetter> ls;
    for (const auto& t : w.terms()) {
        if (t.gen != 1 && t.gen != 2) throw ValidationError("pure braids use generators a1, a2 only");
        ls.push_back({t.gen == 1 ? BraidGen::S1 : BraidGen::S2, 2 * t.exp});
    }
    return BraidWord(std::move(ls), ambient);
}

// ---------------------------------------------------------------- matrices

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::projective() const {
    bool flip = a != 0 ? a < 0 : b < 0;
    if (!flip) return *this;
    return Mat2{-a, -b, -c, -d};
}

std::string Mat2::str() const {
    std::ostringstream os;
    os << "[[" << a << ',' << b << "],[" << c << ',' << d << "]]";
    return os.str();
}

MatrixImage matrix_image(const BraidWord& b) {
    MatrixImage img;
    for (const auto& l : b.letters()) {
        switch (l.gen) {
            case BraidGen::S1: img.matrix = img.matrix * s1_pow(l.exp); img.exponent_sum += l.exp; break;
            case BraidGen::S2: img.matrix = img.matrix * s2_pow(l.exp); img.exponent_sum += l.exp; break;
            case BraidGen::Delta:
                img.matrix = img.matrix * delta_pow(l.exp);
                img.exponent_sum += BigInt(l.exp) * 3;
                break;
        }
    }
    return img;
}

bool equal(const BraidWord& x, const BraidWord& y) {
    if (x.ambient() != y.ambient()) throw ValidationError("ambient mismatch");
    auto ix = matrix_image(x), iy = matrix_image(y);
    if (x.ambient() == Ambient::ModCenter) return ix.matrix.projective() == iy.matrix.projective();
    return ix.matrix == iy.matrix && ix.exponent_sum == iy.exponent_sum;
}

// ---------------------------------------------------------------- normal form

namespace {

// Writes p = sign * W(A1, A2) with A1 = s1^2, A2 = s2^2 by Euclid on the
// first column.
FreeWord pure_word(Mat2 p) {
    std::vector<Term> terms;
    while (p.c != 0) {
        if (abs_big(p.a) > abs_big(p.c)) {
            BigInt n = round_div(p.a, 2 * p.c);
            terms.push_back({1, to_i64(n, "pure exponent")});
            p = s1_pow(-2 * n) * p;
        } else {
            BigInt m = -round_div(p.c, 2 * p.a);
            terms.push_back({2, to_i64(m, "pure exponent")});
            p = s2_pow(-2 * m) * p;
        }
    }
    BigInt top = p.b * p.a;  // p = +-[[1, top], [0, 1]]
    if (top != 0) terms.push_back({1, to_i64(top / 2, "pure exponent")});
    return FreeWord::from_terms(terms);
}

std::int64_t pure_exponent_sum(const FreeWord& w) {
    std::int64_t s = 0;
    for (const auto& t : w.terms()) s += 2 * t.exp;
    return s;
}

}  // namespace

BraidNormalForm normal_form(const BraidWord& b) {
    const MatrixImage img = matrix_image(b);
    const Mod2 perm = mod2(img.matrix);

    int eps = -1, j = 0, lp = 0;
    for (int e : {0, 1}) {
        for (int jj : {1, 2}) {
            if (e == 0 && jj == 2) continue;
            for (int l : {0, 1}) {
                Mat2 m = (e ? (jj == 1 ? s1_pow(1) : s2_pow(1)) : Mat2{}) * delta_pow(l);
                if (mod2(m) == perm) {
                    eps = e;
                    j = jj;
                    lp = l;
                }
            }
        }
    }
    if (eps < 0) throw std::logic_error("braid image is not unimodular");

    Mat2 strip = eps ? (j == 1 ? s1_pow(-1) : s2_pow(-1)) : Mat2{};
    FreeWord w = pure_word(strip * img.matrix * delta_pow(-lp));

    BraidNormalForm nf;
    nf.ambient = b.ambient();
    if (eps == 0 && w.is_identity()) {
        nf.delta_power = true;
        nf.l = b.ambient() == Ambient::ModCenter ? lp : to_i64(img.exponent_sum / 3, "delta exponent");
        return nf;
    }
    const auto& ts = w.terms();
    if (eps == 0) {
        j = ts.front().gen;
        nf.k = 2 * ts.front().exp;
        nf.b1 = FreeWord::from_terms({ts.begin() + 1, ts.end()});
    } else if (!ts.empty() && ts.front().gen == j) {
        nf.k = 1 + 2 * ts.front().exp;
        nf.b1 = FreeWord::from_terms({ts.begin() + 1, ts.end()});
    } else {
        nf.k = 1;
        nf.b1 = w;
    }
    nf.j = j;
    if (b.ambient() == Ambient::ModCenter) {
        nf.l = lp;
    } else {
        BigInt rest = img.exponent_sum - nf.k - pure_exponent_sum(nf.b1);
        nf.l = to_i64(rest / 3, "delta exponent");
    }
    return nf;
}

BraidWord expand(const BraidNormalForm& nf) {
    std::vector<BraidLetter> ls;
    if (!nf.delta_power) {
        ls.push_back({nf.j == 1 ? BraidGen::S1 : BraidGen::S2, nf.k});
        auto pure = pure_braid(nf.b1).letters();
        ls.insert(ls.end(), pure.begin(), pure.end());
    }
    ls.push_back({BraidGen::Delta, nf.l});
    return BraidWord(std::move(ls), nf.ambient);
}

std::string to_string(const BraidNormalForm& nf) {
    std::ostringstream os;
    if (nf.delta_power) os << "d^" << nf.l;
    else os << "j=" << nf.j << " k=" << nf.k << " b1=[" << nf.b1.str() << "] l=" << nf.l;
    return os.str();
}

// ---------------------------------------------------------------- theta and brackets

std::int64_t q(std::int64_t k) {
    if (k == 0) throw ValidationError("q is undefined at 0");
    if (k % 2 == 0) return k;
    return k > 0 ? k - 1 : k + 1;
}

FreeWord theta(const BraidNormalForm& nf) {
    if (nf.delta_power) return {};
    return concat(FreeWord::generator(nf.j, q(nf.k) / 2), nf.b1);
}

FreeWord theta(const BraidWord& b) { return theta(normal_form(b)); }

double lambda_tr_lower(const BraidWord& b) {
    auto nf = normal_form(b);
    if (nf.delta_power || nf.b1.is_identity()) return 0.0;
    return l_minus(theta(nf)) / (2.0 * std::numbers::pi);
}

bool lemma4_admissible(const BraidWord& b, double lambda) {
    if (!(lambda >= 0.0)) throw ValidationError("lambda must be nonnegative");
    auto nf = normal_form(b);
    if (nf.delta_power) return true;
    if (nf.b1.is_identity() && nf.l % 2 == 0) return true;
    return l_minus(theta(nf)) <= 2.0 * std::numbers::pi * lambda + kBudgetSlack;
}

bool lemma3a_check(std::int64_t k, std::int64_t k_other, double lambda) {
    if (k == 0 || k_other == 0) throw ValidationError("exponents must be nonzero");
    if (!(lambda >= 0.0)) throw ValidationError("lambda must be nonnegative");
    auto log_plus = [](std::int64_t e) {
        double t = 3.0 * static_cast<double>(std::llabs(e) / 2);
        return t < 1.0 ? 0.0 : std::max(std::log(t), 0.0);
    };
    return log_plus(k) + log_plus(k_other) <= std::numbers::pi * lambda + kBudgetSlack;
}

// ---------------------------------------------------------------- census

std::vector<BraidWord> census(double budget, double cap) {
    const auto words = enumerate_words(budget, cap);
    const Ambient amb = Ambient::ModCenter;
    auto s = [&](int j, std::int64_t e) {
        return BraidWord({{j == 1 ? BraidGen::S1 : BraidGen::S2, e}}, amb);
    };
    const BraidWord d1({{BraidGen::Delta, 1}}, amb);
    const BraidWord id({}, amb);

    std::vector<BraidWord> raw;
    for (const auto& w : words) {
        std::vector<BraidWord> base;
        if (w.is_identity()) {
            base = {id, s(1, 1), s(1, -1), s(2, 1), s(2, -1)};
        } else {
            const Term first = w.terms().front();
            const int other = 3 - first.gen;
            BraidWord pw = pure_braid(w, amb);
            base = {pw, concat(s(first.gen, first.exp > 0 ? 1 : -1), pw), concat(s(other, 1), pw),
                    concat(s(other, -1), pw)};
        }
        for (const auto& x : base) {
            raw.push_back(x);
            raw.push_back(concat(x, d1));
        }
    }

    std::map<std::string, BraidNormalForm> unique;
    for (const auto& x : raw) unique.emplace(matrix_image(x).matrix.projective().str(), normal_form(x));

    std::vector<BraidNormalForm> forms;
    for (auto& [key, nf] : unique) forms.push_back(nf);
    std::sort(forms.begin(), forms.end(), [](const BraidNormalForm& x, const BraidNormalForm& y) {
        if (x.delta_power != y.delta_power) return x.delta_power;
        if (x.j != y.j) return x.j < y.j;
        if (x.k != y.k) return x.k < y.k;
        if (auto c = compare_words(x.b1, y.b1); c != 0) return c < 0;
        return x.l < y.l;
    });
    std::vector<BraidWord> out;
    out.reserve(forms.size());
    for (const auto& nf : forms) out.push_back(expand(nf));
    return out;
}

LogNumber braid_count_bound(double budget) { return LogNumber::from_ln(std::log(15.0) + 3.0 * budget); }

}  // namespace fbt
