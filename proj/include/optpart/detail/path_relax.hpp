#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "optpart/text.hpp"

// Shared single-pass DAG relaxation used by both the text partitioner and
// the page-aligned partitioner. Nodes are cut positions 0..n; an edge
// (from, to) carries the cost of the segment [from, to).

namespace optpart::detail {

constexpr double kPathInf = std::numeric_limits<double>::infinity();

// Absolute slack under which two path costs count as equal. Ties go to the
// path with fewer segments, then to the smaller predecessor, so every solver
// breaks ties identically.
constexpr double kPathTieTol = 1e-9;

struct Label {
    double dist = kPathInf;
    std::size_t pred = npos;
    std::uint32_t segs = 0;
};

inline void relax(std::vector<Label>& lab, std::size_t from, std::size_t to, double cost) {
    const Label& src = lab[from];
    Label& dst = lab[to];
    double cand = src.dist + cost;
    std::uint32_t cand_segs = src.segs + 1;
    if (cand < dst.dist - kPathTieTol) {
        dst = {cand, from, cand_segs};
        return;
    }
    if (cand <= dst.dist + kPathTieTol &&
        (cand_segs < dst.segs || (cand_segs == dst.segs && from < dst.pred))) {
        dst = {std::min(dst.dist, cand), from, cand_segs};
    }
}

// Cut positions of the best path into node n, in increasing order.
inline std::vector<std::size_t> backtrack_cuts(const std::vector<Label>& lab, std::size_t n) {
    std::vector<std::size_t> cuts;
    for (std::size_t v = n; v != 0; v = lab[v].pred) cuts.push_back(v);
    std::reverse(cuts.begin(), cuts.end());
    return cuts;
}

// Geometric bucket caps (1+eps)^1 .. (1+eps)^K with K just large enough that
// the top bucket covers ubound.
inline std::vector<double> bucket_thresholds(double ubound, double eps) {
    double levels = std::ceil(std::log2(ubound) / std::log2(1.0 + eps));
    std::size_t k = levels < 1.0 ? 1 : std::size_t(levels);
    std::vector<double> thr(k);
    for (std::size_t i = 0; i < k; ++i) thr[i] = std::pow(1.0 + eps, double(i + 1));
    thr[k - 1] = std::max(thr[k - 1], ubound);
    return thr;
}

} // namespace optpart::detail
