#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace optpart {

struct Point {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
};

// Static orthogonal range queries over a point set: a segment tree on x
// whose nodes store their points' y values in sorted order (a layered merge
// structure). Build O(p log p), queries O(log^2 p), space O(p log p).
// Coordinates need not be unique for the structure itself; callers here
// build one grid per symbol, where both coordinates are unique.
class PointGrid {
public:
    PointGrid() = default;
    explicit PointGrid(std::vector<Point> points);

    std::size_t size() const { return xs_.size(); }

    // Among points with x in [x_lo, x_hi], the one with the largest y < y_hi.
    std::optional<Point> max_y_below(std::uint32_t x_lo, std::uint32_t x_hi,
                                     std::uint32_t y_hi) const;

    // Among points with x in [x_lo, x_hi], the one with the smallest y > y_lo.
    std::optional<Point> min_y_above(std::uint32_t x_lo, std::uint32_t x_hi,
                                     std::uint32_t y_lo) const;

private:
    std::vector<std::uint32_t> xs_;            // sorted x of all points
    std::vector<Point> by_x_;                  // points sorted by x
    std::vector<std::vector<Point>> node_pts_; // per tree node, sorted by y

    void build(std::size_t node, std::size_t lo, std::size_t hi);
};

} // namespace optpart
