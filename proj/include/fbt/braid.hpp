#pragma once

#include "fbt/lognumber.hpp"
#include "fbt/word.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fbt {

using BigInt = boost::multiprecision::cpp_int;

enum class BraidGen { S1, S2, Delta };

/// B3 itself, or B3 modulo its center <Delta^2>.
enum class Ambient { B3, ModCenter };

struct BraidLetter {
    BraidGen gen;
    std::int64_t exp;

    friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

/// Word in s1, s2 and the half twist d = s1 s2 s1. Letters with exponent 0
/// are dropped; adjacent equal generators are merged.
class BraidWord {
public:
    BraidWord() = default;
    explicit BraidWord(std::vector<BraidLetter> letters, Ambient ambient = Ambient::B3);

    const std::vector<BraidLetter>& letters() const noexcept { return letters_; }
    Ambient ambient() const noexcept { return ambient_; }
    BraidWord with_ambient(Ambient a) const { return BraidWord(letters_, a); }

    /// `s1^2 d^-1`, prefixed by `@mod-center ` in the quotient.
    std::string str() const;

    friend bool operator==(const BraidWord&, const BraidWord&) = default;

private:
    std::vector<BraidLetter> letters_;
    Ambient ambient_ = Ambient::B3;
};

/// Grammar: optional leading `@mod-center`, then tokens `s1^k`, `s2^k`,
/// `d^k` (k nonzero; a bare `s1` means exponent 1).
BraidWord parse_braid(std::string_view text);

BraidWord concat(const BraidWord& a, const BraidWord& b);
BraidWord inverse(const BraidWord& b);

/// Image of a pure word under a_j -> s_j^2.
BraidWord pure_braid(const FreeWord& w, Ambient ambient = Ambient::B3);

struct Mat2 {
    BigInt a = 1, b = 0, c = 0, d = 1;

    Mat2 operator*(const Mat2& o) const;
    /// Sign-normalized copy: first nonzero entry of the top row positive.
    Mat2 projective() const;
    std::string str() const;

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

struct MatrixImage {
    Mat2 matrix;
    BigInt exponent_sum;
};

/// s1 -> [[1,1],[0,1]], s2 -> [[1,0],[-1,1]], d -> [[0,1],[-1,0]];
/// d counts 3 towards the exponent sum.
MatrixImage matrix_image(const BraidWord& b);

/// Word problem. In B3: matrix and exponent sum agree; in the quotient:
/// projective matrices agree. Mixed ambients throw ValidationError.
bool equal(const BraidWord& x, const BraidWord& y);

/// s_j^k b1 d^l with b1 over a_j = s_j^2, or a bare power of d.
/// When b1 is not the identity its first term is on the generator other
/// than j. In the quotient l is 0 or 1.
struct BraidNormalForm {
    bool delta_power = false;
    int j = 0;
    std::int64_t k = 0;
    FreeWord b1;
    std::int64_t l = 0;
    Ambient ambient = Ambient::B3;

    friend bool operator==(const BraidNormalForm&, const BraidNormalForm&) = default;
};

BraidNormalForm normal_form(const BraidWord& b);
BraidWord expand(const BraidNormalForm& nf);
std::string to_string(const BraidNormalForm& nf);

/// Even neighbour of k closest to zero. Throws for k = 0.
std::int64_t q(std::int64_t k);

/// a_j^{q(k)/2} b1 from the normal form; identity for powers of d.
FreeWord theta(const BraidWord& b);
FreeWord theta(const BraidNormalForm& nf);

/// l_minus(theta(b)) / (2 pi), or 0 when b1 is trivial.
double lambda_tr_lower(const BraidWord& b);

/// l_minus(theta(b)) <= 2 pi lambda. Braids s_j^k d^{2l} and powers of d
/// always pass.
bool lemma4_admissible(const BraidWord& b, double lambda);

/// log+(3 floor(|k|/2)) + log+(3 floor(|k'|/2)) <= pi lambda.
bool lemma3a_check(std::int64_t k, std::int64_t k_other, double lambda);

/// Every element of the quotient with l_minus(theta) <= budget, sorted by
/// normal form, each given by its expanded normal form.
std::vector<BraidWord> census(double budget, double cap = kDefaultEnumerationCap);

/// 15 e^{3Y}.
LogNumber braid_count_bound(double budget);

}  // namespace fbt
