#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>
#include <vector>

#include "optpart/cost_model.hpp"
#include "optpart/window_set.hpp"
#include "test_support.hpp"

using namespace optpart;

namespace {

struct Config {
    WindowVariant variant;
    EntropyFamily family;
    unsigned k;
    ModelCostKind kind;
    double header;
};

CostModel make_model(const Config& c) {
    CostModel m;
    m.family = c.family;
    m.k = c.k;
    m.model = c.kind;
    m.header_bits = c.header;
    return m;
}

// Every window priced incrementally must match the from-scratch evaluation.
void check_against_scratch(const WindowContext& ctx, const WindowSet& ws) {
    for (std::size_t i = 0; i < ws.window_count(); ++i) {
        REQUIRE(ws.end(i) >= ws.left());
        if (i + 1 < ws.window_count())
            REQUIRE(ws.end(i) <= ws.end(i + 1));
        if (ws.empty(i))
            continue;
        SegmentCost scratch = segment_cost(*ctx.text, ws.left(), ws.end(i), ctx.model, ctx.tables);
        SegmentCost got = ws.len(i);
        REQUIRE(testsup::close_rel(got.total_bits, scratch.total_bits));
        REQUIRE(testsup::close_rel(got.entropy_bits, scratch.entropy_bits));
        REQUIRE(testsup::close_rel(got.model_bits, scratch.model_bits));
    }
    REQUIRE(ws.check_lists());
}

void random_schedule(std::mt19937_64& rng, const Config& cfg, std::size_t n, std::size_t sigma,
                     std::size_t m, int ops) {
    Text t = testsup::random_text(rng, n, sigma);
    CostModel model = make_model(cfg);
    WindowContext ctx(t, model);
    WindowSet ws(ctx, m, cfg.variant);
    check_against_scratch(ctx, ws);
    for (int op = 0; op < ops; ++op) {
        std::vector<int> moves; // 0..m-1 app(i), m = rem
        for (std::size_t i = 0; i < m; ++i)
            if (ws.can_app(i))
                moves.push_back(int(i));
        if (ws.end(m - 1) > ws.left() && ws.left() < n)
            moves.push_back(int(m));
        if (moves.empty())
            break;
        int pick = moves[rng() % moves.size()];
        if (pick < int(m)) {
            double promised = ws.peek_app_total(std::size_t(pick));
            ws.app(std::size_t(pick));
            REQUIRE(testsup::close_rel(promised, ws.len(std::size_t(pick)).total_bits, 1e-9));
        } else {
            ws.rem();
        }
        check_against_scratch(ctx, ws);
    }
}

} // namespace

TEST_CASE("construction and empty windows") {
    Text t = Text::from_bytes("ab");
    CostModel m;
    m.header_bits = 5.0;
    WindowContext ctx(t, m);
    WindowSet ws(ctx, 3, WindowVariant::simple);
    CHECK(ws.window_count() == 3);
    CHECK(ws.left() == 0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(ws.end(i) == 0);
        CHECK(ws.empty(i));
        CHECK_THROWS_WITH_AS(ws.len(i), "empty window", std::runtime_error);
    }
    CHECK_THROWS_WITH_AS(ws.rem(), "nothing to remove", std::runtime_error);
}

TEST_CASE("constructor argument validation") {
    Text t = Text::from_bytes("abc");
    CostModel h0;
    WindowContext ctx(t, h0);
    CHECK_THROWS_AS(WindowSet(ctx, 0, WindowVariant::simple), std::invalid_argument);
    CHECK_THROWS_AS(WindowSet(ctx, 1, WindowVariant::simple, 3), std::invalid_argument);
    CHECK_THROWS_WITH_AS(WindowSet(ctx, 1, WindowVariant::adaptive),
                         "adaptive variant requires an adaptive family", std::invalid_argument);
    CHECK_THROWS_WITH_AS(WindowSet(ctx, 1, WindowVariant::korder),
                         "korder variant requires a k-order family", std::invalid_argument);

    CostModel hk;
    hk.family = EntropyFamily::HK;
    hk.k = 1;
    WindowContext kctx(t, hk);
    CHECK_THROWS_WITH_AS(WindowSet(kctx, 1, WindowVariant::compact),
                         "k-order family requires the korder variant", std::invalid_argument);
    CHECK_NOTHROW(WindowSet(kctx, 1, WindowVariant::korder));
}

TEST_CASE("korder context carries both gram texts") {
    Text t = Text::from_bytes("abab");
    CostModel m;
    m.family = EntropyFamily::HK;
    m.k = 1;
    WindowContext ctx(t, m);
    REQUIRE(ctx.grams_succ.has_value());
    REQUIRE(ctx.grams_ctx.has_value());
    CHECK(ctx.grams_succ->size() == 3);
    CHECK(ctx.grams_ctx->size() == 4);
}

TEST_CASE("single-window bookkeeping on tiny inputs") {
    CostModel m;
    m.header_bits = 0.0;
    Text aa = Text::from_bytes("aa");
    WindowContext ctx(aa, m);
    WindowSet ws(ctx, 1, WindowVariant::simple);

    ws.app(0); // "a": zero entropy, unary huffman model pays n = 1
    CHECK(ws.len(0).total_bits == doctest::Approx(1.0).epsilon(1e-12));
    ws.app(0); // "aa"
    CHECK(ws.len(0).entropy_bits == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ws.len(0).total_bits == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(ws.can_app(0));
    CHECK_THROWS_WITH_AS(ws.app(0), "window at text end", std::runtime_error);

    ws.rem(); // down to "a"
    CHECK(ws.len(0).total_bits == doctest::Approx(1.0).epsilon(1e-12));

    CostModel a;
    a.family = EntropyFamily::H0A;
    a.header_bits = 0.0;
    WindowContext actx(aa, a);
    WindowSet aws(actx, 1, WindowVariant::adaptive);
    aws.app(0);
    aws.app(0);
    CHECK(aws.len(0).total_bits == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("append may not overtake the next window") {
    Text t = Text::from_bytes("abcabc");
    CostModel m;
    WindowContext ctx(t, m);
    WindowSet ws(ctx, 2, WindowVariant::compact);
    ws.app(1);
    ws.app(0);
    CHECK(ws.end(0) == ws.end(1));
    CHECK_FALSE(ws.can_app(0));
    CHECK_THROWS_WITH_AS(ws.app(0), "window would overtake its right neighbor",
                         std::runtime_error);
    ws.app(1);
    CHECK(ws.can_app(0));
}

TEST_CASE("block cap stops appends") {
    Text t = Text::from_bytes("abcdefgh");
    CostModel m;
    m.block_cap = 3;
    WindowContext ctx(t, m);
    WindowSet ws(ctx, 1, WindowVariant::simple);
    for (int i = 0; i < 3; ++i)
        ws.app(0);
    CHECK_FALSE(ws.can_app(0));
    ws.rem();
    CHECK(ws.can_app(0));
}

TEST_CASE("empty windows slide along under rem") {
    Text t = Text::from_bytes("abab");
    CostModel m;
    WindowContext ctx(t, m);
    WindowSet ws(ctx, 2, WindowVariant::simple);
    ws.app(1);
    ws.app(1);
    ws.rem(); // window 0 is empty and must follow l
    CHECK(ws.left() == 1);
    CHECK(ws.end(0) == 1);
    CHECK(ws.empty(0));
    CHECK(ws.end(1) == 2);
    CHECK(testsup::close_rel(ws.len(1).total_bits,
                             segment_cost(t, 1, 2, m, ctx.tables).total_bits));
}

TEST_CASE("random schedules match from-scratch costs") {
    const Config configs[] = {
        {WindowVariant::simple, EntropyFamily::H0, 0, ModelCostKind::huffman, 32.0},
        {WindowVariant::compact, EntropyFamily::H0, 0, ModelCostKind::arithmetic, 0.0},
        {WindowVariant::simple, EntropyFamily::H0A, 0, ModelCostKind::huffman, 7.0},
        {WindowVariant::adaptive, EntropyFamily::H0A, 0, ModelCostKind::huffman, 32.0},
        {WindowVariant::korder, EntropyFamily::HK, 1, ModelCostKind::huffman, 32.0},
        {WindowVariant::korder, EntropyFamily::HK, 2, ModelCostKind::arithmetic, 0.0},
        {WindowVariant::korder, EntropyFamily::HK, 3, ModelCostKind::huffman, 32.0},
        {WindowVariant::korder, EntropyFamily::HKA, 2, ModelCostKind::huffman, 32.0},
    };
    std::mt19937_64 rng(2026);
    for (const Config& cfg : configs) {
        INFO("family ", family_name(cfg.family), " k=", cfg.k);
        for (int round = 0; round < 6; ++round) {
            std::size_t n = 16 + rng() % 241;
            std::size_t sigma = 2 + rng() % 15;
            std::size_t m = 1 + rng() % 8;
            random_schedule(rng, cfg, n, sigma, m, 320);
        }
    }
}

TEST_CASE("full sweep stays within the operation-count budget") {
    std::mt19937_64 rng(5);
    const std::size_t n = 192, m = 5;
    Text t = testsup::random_text(rng, n, 6);
    for (WindowVariant variant : {WindowVariant::simple, WindowVariant::compact}) {
        CostModel model;
        WindowContext ctx(t, model);
        WindowSet ws(ctx, m, variant);
        for (std::size_t l = 0; l < n; ++l) {
            for (std::size_t i = m; i-- > 0;) {
                std::size_t target = std::min(n, l + 9 * (i + 1));
                while (ws.can_app(i) && ws.end(i) < target)
                    ws.app(i);
            }
            ws.rem();
        }
        const WindowCounters& c = ws.counters();
        CHECK(c.rem_calls == n);
        CHECK(c.app_calls <= n * m);
        // a sweep is O(n m) accumulator touches for both layouts; the list
        // work of the compact layout is bounded the same way
        CHECK(c.accumulator_updates <= 4 * (n * m + c.app_calls + 64));
        CHECK(c.list_ops <= 4 * (n * m + c.app_calls + 64));
    }
}

TEST_CASE("simple and compact layouts price identically") {
    std::mt19937_64 rng(9);
    Text t = testsup::random_text(rng, 120, 5);
    CostModel model;
    WindowContext ctx(t, model);
    WindowSet a(ctx, 3, WindowVariant::simple);
    WindowSet b(ctx, 3, WindowVariant::compact);
    for (int op = 0; op < 260; ++op) {
        std::size_t i = rng() % 3;
        if (a.can_app(i)) {
            a.app(i);
            b.app(i);
        } else if (a.end(2) > a.left() && a.left() < t.size()) {
            a.rem();
            b.rem();
        }
        for (std::size_t w = 0; w < 3; ++w) {
            REQUIRE(a.end(w) == b.end(w));
            if (!a.empty(w))
                REQUIRE(testsup::close_rel(a.len(w).total_bits, b.len(w).total_bits, 1e-9));
        }
    }
}
