#include "optpart/range_search.hpp"

#include <algorithm>

namespace optpart {
namespace {

bool y_less(const Point& a, const Point& b) { return a.y < b.y; }

} // namespace

PointGrid::PointGrid(std::vector<Point> points) {
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.x < b.x; });
    by_x_ = std::move(points);
    xs_.reserve(by_x_.size());
    for (const Point& p : by_x_) xs_.push_back(p.x);
    if (!by_x_.empty()) {
        node_pts_.assign(4 * by_x_.size(), {});
        build(1, 0, by_x_.size());
    }
}

void PointGrid::build(std::size_t node, std::size_t lo, std::size_t hi) {
    auto& dst = node_pts_[node];
    dst.assign(by_x_.begin() + lo, by_x_.begin() + hi);
    std::sort(dst.begin(), dst.end(), y_less);
    if (hi - lo <= 1) return;
    std::size_t mid = (lo + hi) / 2;
    build(2 * node, lo, mid);
    build(2 * node + 1, mid, hi);
}

std::optional<Point> PointGrid::max_y_below(std::uint32_t x_lo, std::uint32_t x_hi,
                                            std::uint32_t y_hi) const {
    if (by_x_.empty() || x_lo > x_hi) return std::nullopt;
    std::size_t i_lo = std::lower_bound(xs_.begin(), xs_.end(), x_lo) - xs_.begin();
    std::size_t i_hi = std::upper_bound(xs_.begin(), xs_.end(), x_hi) - xs_.begin();
    std::optional<Point> best;
    // iterative descent over the canonical nodes of [i_lo, i_hi)
    struct Frame {
        std::size_t node, lo, hi;
    };
    std::vector<Frame> stack{{1, 0, by_x_.size()}};
    while (!stack.empty()) {
        auto [node, lo, hi] = stack.back();
        stack.pop_back();
        if (i_hi <= lo || hi <= i_lo) continue;
        if (i_lo <= lo && hi <= i_hi) {
            const auto& pts = node_pts_[node];
            auto it = std::lower_bound(pts.begin(), pts.end(), Point{0, y_hi}, y_less);
            if (it != pts.begin()) {
                const Point& cand = *std::prev(it);
                if (!best || cand.y > best->y) best = cand;
            }
            continue;
        }
        std::size_t mid = (lo + hi) / 2;
        stack.push_back({2 * node, lo, mid});
        stack.push_back({2 * node + 1, mid, hi});
    }
    return best;
}

std::optional<Point> PointGrid::min_y_above(std::uint32_t x_lo, std::uint32_t x_hi,
                                            std::uint32_t y_lo) const {
    if (by_x_.empty() || x_lo > x_hi) return std::nullopt;
    std::size_t i_lo = std::lower_bound(xs_.begin(), xs_.end(), x_lo) - xs_.begin();
    std::size_t i_hi = std::upper_bound(xs_.begin(), xs_.end(), x_hi) - xs_.begin();
    std::optional<Point> best;
    struct Frame {
        std::size_t node, lo, hi;
    };
    std::vector<Frame> stack{{1, 0, by_x_.size()}};
    while (!stack.empty()) {
        auto [node, lo, hi] = stack.back();
        stack.pop_back();
        if (i_hi <= lo || hi <= i_lo) continue;
        if (i_lo <= lo && hi <= i_hi) {
            const auto& pts = node_pts_[node];
            auto it = std::upper_bound(pts.begin(), pts.end(), Point{0, y_lo}, y_less);
            if (it != pts.end() && (!best || it->y < best->y)) best = *it;
            continue;
        }
        std::size_t mid = (lo + hi) / 2;
        stack.push_back({2 * node, lo, mid});
        stack.push_back({2 * node + 1, mid, hi});
    }
    return best;
}

} // namespace optpart
