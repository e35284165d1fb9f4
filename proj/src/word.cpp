#include "fbt/word.hpp"

#include "fbt/errors.hpp"
#include "fbt/lognumber.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

namespace fbt {

// ---------------------------------------------------------------- FreeWord

FreeWord FreeWord::from_terms(const std::vector<Term>& terms) {
    FreeWord w;
    auto& out = w.terms_;
    for (Term t : terms) {
        if (t.exp == 0) continue;
        if (t.gen < 1) throw ValidationError("generator index must be positive");
        if (!out.empty() && out.back().gen == t.gen) {
            out.back().exp += t.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(t);
        }
    }
    return w;
}

FreeWord FreeWord::generator(int gen, std::int64_t exp) { return from_terms({{gen, exp}}); }

std::int64_t FreeWord::length() const noexcept {
    std::int64_t n = 0;
    for (const auto& t : terms_) n += std::llabs(t.exp);
    return n;
}

std::vector<Letter> FreeWord::letters() const {
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(length()));
    for (const auto& t : terms_) {
        Letter x = t.exp > 0 ? t.gen : -t.gen;
        for (std::int64_t i = 0; i < std::llabs(t.exp); ++i) out.push_back(x);
    }
    return out;
}

std::string FreeWord::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << ' ';
        os << 'a' << terms_[i].gen << '^' << terms_[i].exp;
    }
    return os.str();
}

FreeWord reduce(const std::vector<Letter>& letters) {
    std::vector<Term> terms;
    terms.reserve(letters.size());
    for (Letter x : letters) {
        if (x == 0) throw ValidationError("letter 0 is not a generator");
        terms.push_back({std::abs(x), x > 0 ? 1 : -1});
    }
    return FreeWord::from_terms(terms);
}

FreeWord invert(const FreeWord& w) {
    std::vector<Term> terms(w.terms().rbegin(), w.terms().rend());
    for (auto& t : terms) t.exp = -t.exp;
    return FreeWord::from_terms(terms);
}

FreeWord concat(const FreeWord& a, const FreeWord& b) {
    std::vector<Term> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return FreeWord::from_terms(terms);
}

FreeWord power(const FreeWord& w, std::int64_t k) {
    FreeWord base = k < 0 ? invert(w) : w;
    FreeWord out;
    for (std::int64_t i = 0; i < std::llabs(k); ++i) out = concat(out, base);
    return out;
}

FreeWord conjugate(const FreeWord& u, const FreeWord& w) { return concat(concat(u, w), invert(u)); }

FreeWord parse_word(std::string_view text) {
    std::vector<Term> terms;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        if (tok.size() < 2 || tok[0] != 'a')
            throw ValidationError("bad word token '" + tok + "'");
        auto caret = tok.find('^');
        std::string gen_s = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        int gen = 0;
        auto [gp, gec] = std::from_chars(gen_s.data(), gen_s.data() + gen_s.size(), gen);
        if (gec != std::errc() || gp != gen_s.data() + gen_s.size() || gen < 1 || gen_s[0] == '+')
            throw ValidationError("bad generator in token '" + tok + "'");
        std::int64_t exp = 1;
        if (caret != std::string::npos) {
            std::string e = tok.substr(caret + 1);
            const char* first = e.data();
            if (!e.empty() && e[0] == '+') ++first;
            auto [ep, eec] = std::from_chars(first, e.data() + e.size(), exp);
            if (e.empty() || eec != std::errc() || ep != e.data() + e.size())
                throw ValidationError("bad exponent in token '" + tok + "'");
            if (exp == 0) throw ValidationError("zero exponent in token '" + tok + "'");
        }
        terms.push_back({gen, exp});
    }
    return FreeWord::from_terms(terms);
}

// ---------------------------------------------------------------- syllables

const char* to_string(SyllableKind kind) {
    switch (kind) {
        case SyllableKind::BigPower: return "big-power";
        case SyllableKind::PlusRun: return "plus-run";
        case SyllableKind::MinusRun: return "minus-run";
    }
    return "?";
}

namespace {

// Letter position inside the term list: `offset` letters of term `term`
// are already consumed.
struct Pos {
    std::size_t term;
    std::int64_t offset;
    auto operator<=>(const Pos&) const = default;
};

struct Choice {
    double cost = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    Syllable first{};
    Pos next{};
};

bool better(double cost, std::size_t count, std::size_t first_len, const Choice& cur) {
    if (cost < cur.cost - 1e-12) return true;
    if (cost > cur.cost + 1e-12) return false;
    if (count != cur.count) return count < cur.count;
    return first_len > cur.first.letter_count;
}

// Cheapest split of the letters into blocks, where a block is a piece of one
// term (a power) or a stretch of alternating letters with a common exponent
// sign (a run). Splitting a term in the middle never pays, so the only
// positions reachable inside a term are its first, second and last letter.
class Splitter {
public:
    explicit Splitter(const std::vector<Term>& ts) : ts_(ts) {
        starts_.resize(ts.size() + 1, 0);
        for (std::size_t i = 0; i < ts.size(); ++i) starts_[i + 1] = starts_[i] + static_cast<std::size_t>(std::llabs(ts[i].exp));
        memo_[Pos{ts.size(), 0}] = Choice{0.0, 0, {}, {}};
        for (std::size_t t = ts.size(); t-- > 0;) {
            std::int64_t k = std::llabs(ts[t].exp);
            std::vector<std::int64_t> offs{k - 1, 1, 0};
            for (std::int64_t o : offs)
                if (o >= 0 && o < k && !memo_.count(Pos{t, o})) solve(Pos{t, o});
        }
    }

    std::vector<Syllable> path() const {
        std::vector<Syllable> out;
        Pos p{0, 0};
        while (p.term < ts_.size()) {
            const Choice& c = memo_.at(p);
            out.push_back(c.first);
            p = c.next;
        }
        return out;
    }

private:
    void consider(Choice& best, Pos from, SyllableKind kind, std::int64_t degree, std::size_t letters, Pos to) {
        const Choice& rest = memo_.at(to);
        double cost = std::log(3.0 * static_cast<double>(degree)) + rest.cost;
        std::size_t count = rest.count + 1;
        if (better(cost, count, letters, best)) {
            std::size_t at = starts_[from.term] + static_cast<std::size_t>(from.offset);
            best = Choice{cost, count, Syllable{kind, degree, at, letters}, to};
        }
    }

    void solve(Pos p) {
        const Term& term = ts_[p.term];
        const std::int64_t k = std::llabs(term.exp);
        const std::int64_t rem = k - p.offset;
        const int sign = term.exp > 0 ? 1 : -1;
        const SyllableKind run_kind = sign > 0 ? SyllableKind::PlusRun : SyllableKind::MinusRun;
        Choice best;
        if (rem >= 2) {
            consider(best, p, SyllableKind::BigPower, rem, static_cast<std::size_t>(rem), Pos{p.term + 1, 0});
            if (rem >= 3) consider(best, p, SyllableKind::BigPower, rem - 1, static_cast<std::size_t>(rem - 1), Pos{p.term, k - 1});
            else consider(best, p, run_kind, 1, 1, Pos{p.term, k - 1});
        } else {
            consider(best, p, run_kind, 1, 1, Pos{p.term + 1, 0});
            std::int64_t len = 1;
            for (std::size_t u = p.term + 1; u < ts_.size(); ++u) {
                if (ts_[u].exp == sign) {
                    ++len;
                    consider(best, p, run_kind, len, static_cast<std::size_t>(len), Pos{u + 1, 0});
                    continue;
                }
                if ((ts_[u].exp > 0) == (sign > 0))
                    consider(best, p, run_kind, len + 1, static_cast<std::size_t>(len + 1), Pos{u, 1});
                break;
            }
        }
        memo_[p] = best;
    }

    const std::vector<Term>& ts_;
    std::vector<std::size_t> starts_;
    std::map<Pos, Choice> memo_;
};

}  // namespace

std::vector<Syllable> syllables(const FreeWord& w) { return Splitter(w.terms()).path(); }

std::vector<std::int64_t> syllable_degrees(const FreeWord& w) {
    std::vector<std::int64_t> d;
    for (const auto& s : syllables(w)) d.push_back(s.degree);
    return d;
}

namespace {
double sum_log(const FreeWord& w, double factor) {
    double acc = 0.0;
    for (auto d : syllable_degrees(w)) acc += std::log(factor * static_cast<double>(d));
    return acc;
}
}  // namespace

double l_minus(const FreeWord& w) { return sum_log(w, 3.0); }
double l_plus(const FreeWord& w) { return sum_log(w, 4.0); }

// ---------------------------------------------------------------- conjugacy

int letter_rank(Letter x) { return 2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0); }

namespace {
bool letters_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](Letter x, Letter y) { return letter_rank(x) < letter_rank(y); });
}

std::vector<Letter> cyclic_reduce_letters(std::vector<Letter> ls) {
    std::size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
        ++lo;
        --hi;
    }
    return {ls.begin() + static_cast<std::ptrdiff_t>(lo), ls.begin() + static_cast<std::ptrdiff_t>(hi)};
}
}  // namespace

std::strong_ordering compare_words(const FreeWord& a, const FreeWord& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    auto la = a.letters(), lb = b.letters();
    if (letters_less(la, lb)) return std::strong_ordering::less;
    if (letters_less(lb, la)) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

FreeWord cyclic_reduce(const FreeWord& w) { return reduce(cyclic_reduce_letters(w.letters())); }

FreeWord cyclic_canonical(const FreeWord& w) {
    auto c = cyclic_reduce_letters(w.letters());
    const std::size_t n = c.size();
    std::vector<Letter> best = c;
    std::vector<Letter> rot(n);
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t i = 0; i < n; ++i) rot[i] = c[(s + i) % n];
        if (letters_less(rot, best)) best = rot;
    }
    return reduce(best);
}

bool is_primitive(const FreeWord& w) {
    if (w.is_identity()) throw ValidationError("identity has no primitivity status");
    auto c = cyclic_reduce_letters(w.letters());
    const std::size_t n = c.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = c[i] == c[i - p];
        if (periodic) return false;
    }
    return true;
}

// ---------------------------------------------------------------- enumeration

namespace {

struct EnumState {
    double budget;
    std::vector<Term> terms;
    std::vector<FreeWord>* out;
};

// l_minus never decreases when letters are appended, so any prefix over
// budget prunes its whole subtree.
void extend(EnumState& st) {
    st.out->push_back(FreeWord::from_terms(st.terms));
    const double limit = st.budget + kBudgetSlack;
    int gens[2] = {1, 2};
    int ngen = 2;
    if (!st.terms.empty()) {
        gens[0] = 3 - st.terms.back().gen;
        ngen = 1;
    }
    for (int gi = 0; gi < ngen; ++gi) {
        for (int sign : {1, -1}) {
            for (std::int64_t k = 1;; ++k) {
                st.terms.push_back({gens[gi], sign * k});
                bool fits = l_minus(FreeWord::from_terms(st.terms)) <= limit;
                if (fits) extend(st);
                st.terms.pop_back();
                if (!fits) break;
            }
        }
    }
}

}  // namespace

std::vector<FreeWord> enumerate_words(double budget, double cap) {
    if (!(budget >= 0.0)) throw ValidationError("enumeration budget must be nonnegative");
    if (budget > cap) throw ValidationError("enumeration budget exceeded");
    std::vector<FreeWord> out;
    EnumState st{budget, {}, &out};
    extend(st);

    struct Keyed {
        std::size_t syl;
        std::vector<Letter> letters;
        FreeWord w;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(out.size());
    for (auto& w : out) keyed.push_back({syllables(w).size(), w.letters(), std::move(w)});
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.syl != b.syl) return a.syl < b.syl;
        return letters_less(a.letters, b.letters);
    });
    out.clear();
    for (auto& k : keyed) out.push_back(std::move(k.w));
    return out;
}

LogNumber word_count_bound(double budget) {
    return LogNumber::from_ln(3.0 * budget - std::log(2.0)) + LogNumber::one();
}

// ---------------------------------------------------------------- tuples

MonodromyTuple::MonodromyTuple(int genus, int holes_minus_one, std::vector<FreeWord> entries)
    : genus_(genus), m_(holes_minus_one), entries_(std::move(entries)) {
    if (genus < 0 || holes_minus_one < 0) throw ValidationError("g and m must be nonnegative");
    if (entries_.size() != static_cast<std::size_t>(2 * genus + holes_minus_one))
        throw ValidationError("monodromy tuple must have 2g+m entries");
}

MonodromyTuple conjugate(const FreeWord& u, const MonodromyTuple& t) {
    std::vector<FreeWord> e;
    e.reserve(t.entries().size());
    for (const auto& w : t.entries()) e.push_back(conjugate(u, w));
    return MonodromyTuple(t.genus(), t.m(), std::move(e));
}

namespace {

std::int64_t total_length(const std::vector<FreeWord>& es) {
    std::int64_t n = 0;
    for (const auto& w : es) n += w.length();
    return n;
}

bool tuple_less(const std::vector<FreeWord>& a, const std::vector<FreeWord>& b) {
    auto la = total_length(a), lb = total_length(b);
    if (la != lb) return la < lb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto c = compare_words(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

struct ConjSearch {
    const std::vector<FreeWord>* entries;
    int rank;
    std::int64_t max_len;
    std::vector<Letter> u;
    std::vector<FreeWord> best;

    void visit() {
        FreeWord uw = reduce(u);
        FreeWord ui = invert(uw);
        std::vector<FreeWord> cand;
        cand.reserve(entries->size());
        for (const auto& w : *entries) cand.push_back(concat(concat(uw, w), ui));
        if (tuple_less(cand, best)) best = std::move(cand);
    }

    void dfs() {
        visit();
        if (static_cast<std::int64_t>(u.size()) >= max_len) return;
        for (int g = 1; g <= rank; ++g) {
            for (int s : {1, -1}) {
                Letter x = s * g;
                if (!u.empty() && u.back() == -x) continue;
                u.push_back(x);
                dfs();
                u.pop_back();
            }
        }
    }
};

}  // namespace

MonodromyTuple tuple_canonical(const MonodromyTuple& t) {
    int rank = 1;
    std::int64_t max_len = 0;
    for (const auto& w : t.entries()) {
        for (const auto& term : w.terms()) rank = std::max(rank, term.gen);
        max_len = std::max(max_len, w.length());
    }
    ConjSearch search{&t.entries(), rank, max_len, {}, t.entries()};
    search.dfs();
    return MonodromyTuple(t.genus(), t.m(), std::move(search.best));
}

}  // namespace fbt
