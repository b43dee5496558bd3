#pragma once

#include <cstdint>
#include <vector>

#include "optpart/text.hpp"

namespace optpart {

// Suffix machinery over t extended by a virtual sentinel that sorts below
// every symbol. All arrays span the n+1 suffixes including the sentinel
// suffix, so sa[0] == n always and isa[i] is defined for i == n too.
//
// bwt[r] is the symbol preceding suffix sa[r], i.e. t[sa[r] - 1]; the single
// row with sa[r] == 0 is preceded by the sentinel and carries the marker
// value t.sigma() instead. That row's index is kept in sentinel_row so
// window code can skip it.
struct SuffixData {
    std::vector<std::uint32_t> sa;
    std::vector<std::uint32_t> isa;
    std::vector<Symbol> bwt;
    std::size_t sentinel_row = 0;
};

// Prefix-doubling construction, O(n log^2 n) with plain comparison sorts.
SuffixData build_suffix_data(const Text& t);

} // namespace optpart
