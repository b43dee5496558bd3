#pragma once

#include <cstddef>
#include <vector>

#include "optpart/text.hpp"

namespace optpart {

// Concatenation of order-2 De Bruijn sequences over disjoint sub-alphabets:
// block i covers symbols [i*alpha, (i+1)*alpha) and has length alpha^2, with
// every ordered symbol pair of its sub-alphabet occurring exactly once
// cyclically. Total length sigma * alpha; every symbol occurs alpha times.
struct GapInstance {
    std::size_t sigma;
    std::size_t alpha;
    std::size_t block_count; // sigma / alpha
    Text text;
};

// Throws std::invalid_argument unless alpha >= 2 and alpha divides sigma.
GapInstance generate_gap_instance(std::size_t sigma, std::size_t alpha);

// One order-2 De Bruijn sequence over symbols 0..alpha-1, length alpha^2,
// built from an Eulerian circuit of the complete digraph with self-loops.
std::vector<Symbol> de_bruijn_order2(std::size_t alpha);

// Last column of the cyclic rotation matrix of t (no sentinel): out[r] is
// the symbol preceding the rank-r rotation. Equal rotations tie-break by
// start position, which leaves every per-context multiset unchanged.
std::vector<Symbol> cyclic_bwt(const Text& t);

// The three partitions of L = cyclic_bwt(instance) available to a
// context-grouping splitter, each priced as h0 bits plus a flat
// log2(sigma)-bit model charge per segment.
struct BoosterCosts {
    double whole;       // all of L as one segment
    double per_context; // one segment per first-symbol context group
    double per_symbol;  // every symbol its own segment
};

BoosterCosts booster_partition_costs(const GapInstance& g);

// Cost of slicing L into sigma/alpha^2 consecutive blocks of alpha^3 symbols
// under the same pricing. Throws std::invalid_argument unless alpha^2
// divides sigma.
double alternative_partition_cost(const GapInstance& g);

// The sub-alphabet width used at a given sigma: max(2, round(sqrt(log2 sigma
// / log2 log2 sigma))), then adjusted upward until alpha^2 divides sigma.
std::size_t gap_alpha(std::size_t sigma);

// min(booster costs) / alternative cost at gap_alpha(sigma).
double gap_ratio(std::size_t sigma);

} // namespace optpart
