#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "optpart/range_search.hpp"
#include "optpart/suffix_array.hpp"
#include "test_support.hpp"

using namespace optpart;

namespace {

// Rank all n+1 suffixes (virtual sentinel included) by direct comparison:
// running off the end sorts first.
std::vector<std::uint32_t> naive_suffix_array(const Text& t) {
    std::size_t n = t.size();
    std::vector<std::uint32_t> sa(n + 1);
    std::iota(sa.begin(), sa.end(), 0u);
    std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
        while (a < n && b < n) {
            if (t[a] != t[b])
                return t[a] < t[b];
            ++a;
            ++b;
        }
        return a > b; // the shorter suffix (closer to the end) sorts first
    });
    return sa;
}

} // namespace

TEST_CASE("suffix data on a fixed string") {
    Text t = Text::from_bytes("banana"); // b=0 a=1 n=2
    SuffixData sd = build_suffix_data(t);
    REQUIRE(sd.sa.size() == 7);
    CHECK(sd.sa[0] == 6); // sentinel suffix first
    CHECK(sd.sa == naive_suffix_array(t));
    for (std::size_t r = 0; r < sd.sa.size(); ++r)
        CHECK(sd.isa[sd.sa[r]] == r);
    // the row of suffix 0 carries the sentinel marker
    CHECK(sd.sa[sd.sentinel_row] == 0);
    CHECK(sd.bwt[sd.sentinel_row] == t.sigma());
}

TEST_CASE("suffix data matches the naive sort on random texts") {
    std::mt19937_64 rng(151);
    for (int round = 0; round < 50; ++round) {
        Text t = testsup::random_text(rng, 1 + rng() % 200, 1 + rng() % 8);
        SuffixData sd = build_suffix_data(t);
        REQUIRE(sd.sa == naive_suffix_array(t));

        // isa inverts sa
        for (std::size_t r = 0; r < sd.sa.size(); ++r)
            REQUIRE(sd.isa[sd.sa[r]] == r);

        // bwt holds the preceding symbol of every suffix, marker at row of
        // suffix 0, and is a permutation of the text plus that marker
        std::vector<Symbol> sorted_bwt = sd.bwt;
        std::vector<Symbol> expected(t.symbols());
        expected.push_back(Symbol(t.sigma()));
        std::sort(sorted_bwt.begin(), sorted_bwt.end());
        std::sort(expected.begin(), expected.end());
        REQUIRE(sorted_bwt == expected);
        for (std::size_t r = 0; r < sd.sa.size(); ++r) {
            if (r == sd.sentinel_row) {
                REQUIRE(sd.sa[r] == 0);
                REQUIRE(sd.bwt[r] == t.sigma());
            } else {
                REQUIRE(sd.bwt[r] == t[sd.sa[r] - 1]);
            }
        }
    }
}

TEST_CASE("point grid answers match a linear scan") {
    std::mt19937_64 rng(157);
    for (int round = 0; round < 100; ++round) {
        std::size_t p = 1 + rng() % 200;
        // unique coordinates on both axes, matching how the windows use it
        std::vector<std::uint32_t> xs(p * 2), ys(p * 2);
        std::iota(xs.begin(), xs.end(), 0u);
        std::iota(ys.begin(), ys.end(), 0u);
        std::shuffle(xs.begin(), xs.end(), rng);
        std::shuffle(ys.begin(), ys.end(), rng);
        std::vector<Point> pts(p);
        for (std::size_t i = 0; i < p; ++i)
            pts[i] = {xs[i], ys[i]};
        PointGrid grid(pts);
        REQUIRE(grid.size() == p);

        for (int q = 0; q < 40; ++q) {
            std::uint32_t a = std::uint32_t(rng() % (p * 2));
            std::uint32_t b = std::uint32_t(rng() % (p * 2));
            std::uint32_t x_lo = std::min(a, b), x_hi = std::max(a, b);
            std::uint32_t bound = std::uint32_t(rng() % (p * 2 + 1));

            std::optional<Point> best_below;
            std::optional<Point> best_above;
            for (const Point& pt : pts) {
                if (pt.x < x_lo || pt.x > x_hi)
                    continue;
                if (pt.y < bound && (!best_below || pt.y > best_below->y))
                    best_below = pt;
                if (pt.y > bound && (!best_above || pt.y < best_above->y))
                    best_above = pt;
            }

            std::optional<Point> got_below = grid.max_y_below(x_lo, x_hi, bound);
            std::optional<Point> got_above = grid.min_y_above(x_lo, x_hi, bound);
            REQUIRE(got_below.has_value() == best_below.has_value());
            REQUIRE(got_above.has_value() == best_above.has_value());
            if (best_below) {
                REQUIRE(got_below->x == best_below->x);
                REQUIRE(got_below->y == best_below->y);
            }
            if (best_above) {
                REQUIRE(got_above->x == best_above->x);
                REQUIRE(got_above->y == best_above->y);
            }
        }
    }
}

TEST_CASE("point grid edge cases") {
    PointGrid empty;
    CHECK(empty.size() == 0);
    CHECK_FALSE(empty.max_y_below(0, 100, 50).has_value());
    CHECK_FALSE(empty.min_y_above(0, 100, 0).has_value());

    PointGrid one(std::vector<Point>{{5, 7}});
    CHECK_FALSE(one.max_y_below(0, 4, 100).has_value()); // x out of range
    CHECK_FALSE(one.max_y_below(0, 10, 7).has_value());  // bound is strict
    CHECK(one.max_y_below(0, 10, 8)->y == 7);
    CHECK_FALSE(one.min_y_above(0, 10, 7).has_value());
    CHECK(one.min_y_above(5, 5, 6)->x == 5);
}

TEST_CASE("inverted x range yields nothing") {
    PointGrid g(std::vector<Point>{{1, 1}, {2, 2}, {3, 3}});
    CHECK_FALSE(g.max_y_below(3, 1, 10).has_value());
    CHECK_FALSE(g.min_y_above(3, 1, 0).has_value());
}
