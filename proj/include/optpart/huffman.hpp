#pragma once

#include <cstdint>
#include <vector>

#include "optpart/partitioner.hpp"
#include "optpart/text.hpp"

namespace optpart {

// Code lengths of an optimal prefix code for the given frequencies, built by
// Huffman merging with deterministic tie-breaking. Absent symbols get length
// 0. A lone present symbol gets length 1: the degenerate one-symbol code
// still spends a bit per symbol, which keeps validation numbers reproducible.
std::vector<std::uint32_t> huffman_code_lengths(const std::vector<std::uint64_t>& freq);

// Canonical codewords for the given lengths (shorter lengths first, ids
// ascending within a length). codes[i] holds the lengths[i] low bits.
std::vector<std::uint64_t> canonical_codes(const std::vector<std::uint32_t>& lengths);

// Bits to transmit the code table: one (symbol id, length) record per
// present symbol, with ceil(log2(max(alphabet, 2))) id bits plus 5 length
// bits each.
double huffman_table_bits(std::size_t present, std::size_t alphabet);

// Actual bits a canonical Huffman coder spends on each segment of p
// (payload plus table), for comparison against the estimated costs.
std::vector<double> huffman_validate(const Text& t, const Partition& p);

} // namespace optpart
