#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fbt {

/// One term a_gen^exponent of a word in a free group.
struct Term {
    int gen = 1;
    std::int64_t exp = 1;

    friend bool operator==(const Term&, const Term&) = default;
};

/// A single generator letter a_gen^{+1} (positive) or a_gen^{-1} (negative).
/// Stored as a signed generator index: +2 is a2, -1 is a1^-1.
using Letter = int;

/// Reduced word in a free group on generators a1, a2, ... (rank 2 is the
/// case of interest; the letter machinery is rank-agnostic).
///
/// Invariant: adjacent terms have distinct generators and no exponent is 0.
/// The empty term list is the identity.
class FreeWord {
public:
    FreeWord() = default;

    /// Builds the reduced word of an arbitrary term sequence (merging and
    /// cancelling as needed).
    static FreeWord from_terms(const std::vector<Term>& terms);
    static FreeWord generator(int gen, std::int64_t exp = 1);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_identity() const noexcept { return terms_.empty(); }

    /// Word length: the sum of |exponent| over all terms.
    std::int64_t length() const noexcept;
    std::vector<Letter> letters() const;

    /// Text form `a1^2 a2^-3`; the identity renders as the empty string.
    std::string str() const;

    friend bool operator==(const FreeWord&, const FreeWord&) = default;

private:
    std::vector<Term> terms_;
};

/// Free reduction of a letter sequence.
FreeWord reduce(const std::vector<Letter>& letters);
FreeWord invert(const FreeWord& w);
FreeWord concat(const FreeWord& a, const FreeWord& b);
FreeWord power(const FreeWord& w, std::int64_t k);
FreeWord conjugate(const FreeWord& u, const FreeWord& w);  // u w u^-1

/// Parses the word grammar: whitespace-separated `a1^k` / `a2^k` tokens with
/// k a nonzero decimal integer, `a1` short for `a1^1`, empty string = Id.
/// Tokens with a larger generator index (`a3^2`) are accepted for tuples.
FreeWord parse_word(std::string_view text);

// ---- syllables and the L-invariants ----

enum class SyllableKind { BigPower, PlusRun, MinusRun };

const char* to_string(SyllableKind kind);

struct Syllable {
    SyllableKind kind;
    std::int64_t degree;
    std::size_t first_letter;  // span [first_letter, first_letter + letter_count)
    std::size_t letter_count;
};

/// Splits the letters into blocks of two shapes: a piece a_j^d of one term
/// (big power, d >= 2) or a stretch of alternating letters sharing one
/// exponent sign (run, degree = letter count). Among all splits the one with
/// the least sum of log(3d) is returned, then the fewest blocks, then the
/// longest leading block. For words such as a1^3 a2^-2 or a1 a2 a1 this is
/// the obvious term/run reading; at a term/run border it may hand the border
/// letter to the run (a1^2 a2 a1 -> a1 | a1 a2 a1), which keeps l_minus
/// subadditive under multiplication.
std::vector<Syllable> syllables(const FreeWord& w);

/// Syllable degrees in left-to-right order.
std::vector<std::int64_t> syllable_degrees(const FreeWord& w);

/// Sum of log(3 d_k) over the syllables; 0 for the identity.
double l_minus(const FreeWord& w);
/// Sum of log(4 d_k) over the syllables; 0 for the identity.
double l_plus(const FreeWord& w);

// ---- conjugacy ----

/// Cyclically reduced form of w (as a reduced word), without rotation.
FreeWord cyclic_reduce(const FreeWord& w);

/// Canonical representative of the conjugacy class: cyclic reduction followed
/// by the lexicographically least rotation of the letter sequence
/// (letter order a1 < a1^-1 < a2 < a2^-1 < ...).
FreeWord cyclic_canonical(const FreeWord& w);

/// True iff w is not a proper power u^k, k >= 2. Throws ValidationError for Id.
bool is_primitive(const FreeWord& w);

/// Total order used for canonical forms and enumeration output: letter count
/// first, then letter sequence under the letter order above.
std::strong_ordering compare_words(const FreeWord& a, const FreeWord& b);
int letter_rank(Letter x);

// ---- enumeration ----

inline constexpr double kDefaultEnumerationCap = 4.5;
/// Slack used when comparing L-values against a budget.
inline constexpr double kBudgetSlack = 1e-12;

/// All reduced words over a1, a2 (identity included) with l_minus <= budget,
/// ordered by (syllable count, letter sequence). Throws ValidationError when
/// budget < 0 or budget > cap.
std::vector<FreeWord> enumerate_words(double budget, double cap = kDefaultEnumerationCap);

class LogNumber;
/// The counting bound e^{3Y}/2 + 1 for words with l_minus <= Y.
LogNumber word_count_bound(double budget);

// ---- monodromy tuples ----

/// Images of the 2g+m standard generators under a homomorphism into the free
/// group.
class MonodromyTuple {
public:
    MonodromyTuple(int genus, int holes_minus_one, std::vector<FreeWord> entries);

    int genus() const noexcept { return genus_; }
    int m() const noexcept { return m_; }
    const std::vector<FreeWord>& entries() const noexcept { return entries_; }

    friend bool operator==(const MonodromyTuple&, const MonodromyTuple&) = default;

private:
    int genus_;
    int m_;
    std::vector<FreeWord> entries_;
};

MonodromyTuple conjugate(const FreeWord& u, const MonodromyTuple& t);

/// Canonical representative under simultaneous conjugation: among all
/// conjugates by reduced words of length <= the longest entry, the one with
/// the least total length, ties broken by the entrywise word order.
MonodromyTuple tuple_canonical(const MonodromyTuple& t);

}  // namespace fbt
