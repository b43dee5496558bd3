#pragma once

#include <cstdint>
#include <vector>

#include "optpart/cost_model.hpp"
#include "optpart/text.hpp"

namespace optpart {

// A partition of t into contiguous segments. cuts holds the exclusive end of
// each segment in increasing order, so cuts.back() == t.size() and segment i
// is [cuts[i-1], cuts[i]) with cuts[-1] = 0.
struct Partition {
    std::vector<std::size_t> cuts;
    std::vector<SegmentCost> segments;
    double total_bits = 0.0;
};

struct ApproxStats {
    std::size_t bucket_count = 0;
    double cost_bound = 0.0; // the U used to size the bucket ladder
    std::uint64_t edges_relaxed = 0;
    std::uint64_t monotone_clamps = 0; // cost decreases observed while advancing
};

// One pruned edge out of a node: the segment [l, target) priced at cost.
struct PrunedEdge {
    std::size_t target;
    double cost;
};

// Cost of every suffix segment [l, n), computed in a single right-to-left
// pass (prepending a symbol updates the same accumulators appending does).
std::vector<double> suffix_costs(const Text& t, const CostModel& model);

// Optimal partition by dynamic programming over all O(n^2) segments.
// The default evaluation slides one window per start position; naive = true
// prices every segment from scratch instead (quadratically slower, kept as a
// cross-check for small inputs).
Partition exact_partition(const Text& t, const CostModel& model, bool naive = false);

// (1 + epsilon)-approximation: shortest path over the pruned segment graph,
// generating at most one edge per cost bucket (1+eps)^1 .. (1+eps)^K per
// node plus the edge covering the whole suffix. Throws std::invalid_argument
// for epsilon <= 0.
Partition approx_partition(const Text& t, const CostModel& model, double epsilon,
                           ApproxStats* stats = nullptr);

// The pruned edges leaving node l: for each bucket the longest segment whose
// cost stays under the bucket's threshold, plus the suffix edge, duplicates
// collapsed. Matches what approx_partition relaxes at node l.
std::vector<PrunedEdge> maximal_edges_at(const Text& t, const CostModel& model, double epsilon,
                                         std::size_t l);

// Recomputes every segment of p from scratch, validates the cut structure
// and that recorded costs agree within 1e-6 relative, and returns the summed
// cost. Throws std::invalid_argument("malformed partition") otherwise.
SegmentCost verify_partition(const Text& t, const CostModel& model, const Partition& p);

} // namespace optpart
