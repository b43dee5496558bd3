#include "optpart/suffix_array.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace optpart {

SuffixData build_suffix_data(const Text& t) {
    std::size_t n = t.size();
    std::size_t m = n + 1; // suffixes including the sentinel one
    std::vector<std::uint32_t> sa(m), rank(m), next_rank(m);
    std::iota(sa.begin(), sa.end(), 0u);
    for (std::size_t i = 0; i < n; ++i) rank[i] = t[i] + 1; // 0 reserved for the sentinel
    rank[n] = 0;

    for (std::size_t step = 1;; step <<= 1) {
        auto key = [&](std::uint32_t i) {
            std::uint32_t second = i + step < m ? rank[i + step] + 1 : 0;
            return std::pair<std::uint32_t, std::uint32_t>(rank[i], second);
        };
        std::sort(sa.begin(), sa.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
        next_rank[sa[0]] = 0;
        for (std::size_t r = 1; r < m; ++r)
            next_rank[sa[r]] = next_rank[sa[r - 1]] + (key(sa[r - 1]) != key(sa[r]) ? 1 : 0);
        rank.swap(next_rank);
        if (rank[sa[m - 1]] == m - 1) break;
    }

    SuffixData out;
    out.sa = std::move(sa);
    out.isa = std::move(rank); // final ranks are exactly the inverse permutation
    out.bwt.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
        if (out.sa[r] == 0) {
            out.bwt[r] = Symbol(t.sigma());
            out.sentinel_row = r;
        } else {
            out.bwt[r] = t[out.sa[r] - 1];
        }
    }
    return out;
}

} // namespace optpart
