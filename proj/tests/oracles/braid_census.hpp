#pragma once

// Independent census of B3 modulo its center. Walks every tuple
// (j, k, b1, l) with |k| <= max_k and b1 a reduced word of length <= max_b1
// that does not start on generator j, computes the pure image word
// a_j^{q(k)/2} b1 by hand and the projective 2x2 image with machine
// integers, and keeps the distinct matrices whose image word scores at most
// the budget under the brute-force split cost.

#include "oracles/word_count.hpp"

#include <array>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using M2 = std::array<long long, 4>;

inline M2 mul(const M2& x, const M2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

inline M2 proj(M2 m) {
    bool flip = m[0] != 0 ? m[0] < 0 : m[1] < 0;
    if (flip)
        for (auto& x : m) x = -x;
    return m;
}

inline M2 gen_pow(int j, long long e) {
    M2 r{1, 0, 0, 1};
    M2 g = j == 1 ? M2{1, 1, 0, 1} : M2{1, 0, -1, 1};
    M2 gi = j == 1 ? M2{1, -1, 0, 1} : M2{1, 0, 1, 1};
    for (long long i = 0; i < (e < 0 ? -e : e); ++i) r = mul(r, e < 0 ? gi : g);
    return r;
}

inline const M2 kDelta{0, 1, -1, 0};

inline void reduced_words(std::vector<int>& cur, std::size_t max_len, std::vector<std::vector<int>>& out) {
    out.push_back(cur);
    if (cur.size() == max_len) return;
    for (int x : {1, -1, 2, -2}) {
        if (!cur.empty() && cur.back() == -x) continue;
        cur.push_back(x);
        reduced_words(cur, max_len, out);
        cur.pop_back();
    }
}

inline std::set<M2> quotient_census(double budget, long long max_k, std::size_t max_b1) {
    std::vector<std::vector<int>> words;
    std::vector<int> cur;
    reduced_words(cur, max_b1, words);
    std::set<M2> keep;
    for (int l : {0, 1}) {
        M2 tail = l ? kDelta : M2{1, 0, 0, 1};
        keep.insert(proj(tail));  // powers of the half twist
        for (int j : {1, 2}) {
            for (long long k = -max_k; k <= max_k; ++k) {
                if (k == 0) continue;
                long long half = (k % 2 == 0 ? k : (k > 0 ? k - 1 : k + 1)) / 2;
                for (const auto& b1 : words) {
                    if (!b1.empty() && (b1.front() == j || b1.front() == -j)) continue;
                    std::vector<int> image;
                    for (long long i = 0; i < (half < 0 ? -half : half); ++i) image.push_back(half < 0 ? -j : j);
                    image.insert(image.end(), b1.begin(), b1.end());
                    if (min_split_cost(image) > budget + 1e-12) continue;
                    M2 m = gen_pow(j, k);
                    for (int x : b1) m = mul(m, gen_pow(x < 0 ? -x : x, x < 0 ? -2 : 2));
                    keep.insert(proj(mul(m, tail)));
                }
            }
        }
    }
    return keep;
}

}  // namespace oracle
