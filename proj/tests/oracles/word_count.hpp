#pragma once

// Brute-force reference for l_minus and word counts. Words are built letter
// by letter and l_minus is the minimum of sum log(3 d) over every way of
// cutting the letter string into blocks, a block being either a repeated
// single letter or an alternating stretch of letters with one exponent sign.
// Since (3x)(3y) >= 3(x+y), l_minus(w) >= log(3 |w|), which bounds the
// letter length to search.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace oracle {

inline bool is_block(const std::vector<int>& ls, std::size_t lo, std::size_t hi) {
    bool power = true, run = true;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        power = power && ls[i] == ls[lo];
        run = run && std::abs(ls[i]) != std::abs(ls[i - 1]) && (ls[i] > 0) == (ls[lo] > 0);
    }
    return power || run;
}

inline double min_split_cost(const std::vector<int>& ls) {
    const std::size_t n = ls.size();
    std::vector<double> best(n + 1, INFINITY);
    best[n] = 0.0;
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = i + 1; j <= n; ++j)
            if (is_block(ls, i, j)) best[i] = std::min(best[i], std::log(3.0 * double(j - i)) + best[j]);
    return best[0];
}

inline void count_rec(std::vector<int>& ls, std::size_t max_len, double budget, std::uint64_t& n) {
    if (min_split_cost(ls) > budget + 1e-12) return;
    ++n;
    if (ls.size() == max_len) return;
    for (int x : {1, -1, 2, -2}) {
        if (!ls.empty() && ls.back() == -x) continue;
        ls.push_back(x);
        count_rec(ls, max_len, budget, n);
        ls.pop_back();
    }
}

inline std::uint64_t count_words(double budget) {
    std::vector<int> ls;
    std::uint64_t n = 0;
    count_rec(ls, static_cast<std::size_t>(std::exp(budget) / 3.0 + 1e-9), budget, n);
    return n;
}

}  // namespace oracle
