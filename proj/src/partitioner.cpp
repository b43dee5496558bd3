#include "optpart/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optpart/detail/path_relax.hpp"
#include "optpart/window_set.hpp"

namespace optpart {
namespace {

using detail::Label;
using detail::relax;

// Reported per-segment costs are recomputed from scratch so the output never
// inherits drift from the incremental accumulators.
Partition assemble(const Text& t, const CostModel& model, const std::vector<Label>& lab) {
    std::size_t n = t.size();
    if (!std::isfinite(lab[n].dist)) throw std::logic_error("no partition found");
    Partition p;
    p.cuts = detail::backtrack_cuts(lab, n);
    std::size_t begin = 0;
    LogTables tables(n);
    for (std::size_t end : p.cuts) {
        SegmentCost sc = segment_cost(t, begin, end, model, tables);
        p.total_bits += sc.total_bits;
        p.segments.push_back(sc);
        begin = end;
    }
    return p;
}

WindowVariant variant_for(const CostModel& model) {
    if (model.korder() && model.k > 0) return WindowVariant::korder;
    return model.adaptive() ? WindowVariant::adaptive : WindowVariant::compact;
}

std::vector<double> suffix_costs_impl(const WindowContext& ctx) {
    const Text& t = *ctx.text;
    const CostModel& model = ctx.model;
    const LogTables& tables = ctx.tables;
    std::size_t n = t.size();
    bool adaptive = model.adaptive();
    auto step = [&](std::uint32_t count_after) {
        return adaptive ? std::log2(double(count_after))
                        : tables.xlogx(count_after) - tables.xlogx(count_after - 1);
    };
    std::vector<double> out(n, 0.0);
    if (model.korder() && model.k > 0) {
        // the gram texts exist whenever some suffix is longer than k, which
        // is the only case the len > k branch below can reach
        const Text& gs = ctx.grams_succ ? *ctx.grams_succ : t;
        const Text& gc = ctx.grams_ctx ? *ctx.grams_ctx : t;
        std::vector<std::uint32_t> cnt_s(gs.sigma(), 0), cnt_c(gc.sigma(), 0);
        double acc_succ = 0.0, acc_ctx = 0.0;
        std::size_t distinct = 0;
        std::size_t k = model.k;
        for (std::size_t l = n; l-- > 0;) {
            std::size_t len = n - l;
            if (len > k) {
                // gram position l enters both gram windows
                acc_succ += step(++cnt_s[gs[l]]);
                if (cnt_s[gs[l]] == 1) ++distinct;
                acc_ctx += step(++cnt_c[gc[l]]);
            }
            double entropy = len > k ? acc_ctx - acc_succ : 0.0;
            std::size_t sig = len > k ? distinct : 0;
            out[l] = model.lambda * entropy + model_bits(len, sig, model) + model.header_bits;
        }
    } else {
        std::vector<std::uint32_t> cnt(t.sigma(), 0);
        double acc = 0.0;
        std::size_t distinct = 0;
        for (std::size_t l = n; l-- > 0;) {
            acc += step(++cnt[t[l]]);
            if (cnt[t[l]] == 1) ++distinct;
            std::size_t len = n - l;
            double whole = adaptive ? tables.logfact(len) : tables.xlogx(len);
            out[l] = model.lambda * (whole - acc) + model_bits(len, distinct, model) +
                     model.header_bits;
        }
    }
    return out;
}

using detail::bucket_thresholds;

// Grow window i while its cost stays under thr. Costs are compared through a
// running maximum so a family whose cost dips when a symbol is appended
// cannot make the window overshoot; each observed dip is counted.
void advance_bucket(WindowSet& ws, std::size_t i, double thr, std::uint64_t& clamps) {
    double run = ws.empty(i) ? 0.0 : ws.len(i).total_bits;
    while (ws.can_app(i)) {
        double next = ws.peek_app_total(i);
        if (next < run - 1e-9 * std::max(1.0, run)) ++clamps;
        double eff = std::max(next, run);
        if (eff > thr) break;
        ws.app(i);
        run = eff;
    }
}

std::vector<PrunedEdge> collect_edges(const WindowSet& ws, std::size_t l, std::size_t n,
                                      const std::vector<double>& sfx, std::size_t cap) {
    std::vector<PrunedEdge> out;
    std::size_t last = npos;
    for (std::size_t i = 0; i < ws.window_count(); ++i) {
        if (ws.empty(i) || ws.end(i) == last) continue;
        last = ws.end(i);
        out.push_back({last, ws.len(i).total_bits});
    }
    if (last != n && n - l <= cap) out.push_back({n, sfx[l]});
    return out;
}

} // namespace

std::vector<double> suffix_costs(const Text& t, const CostModel& model) {
    WindowContext ctx(t, model);
    return suffix_costs_impl(ctx);
}

Partition exact_partition(const Text& t, const CostModel& model, bool naive) {
    std::size_t n = t.size();
    std::size_t cap = model.block_cap ? *model.block_cap : n;
    std::vector<Label> lab(n + 1);
    lab[0] = {0.0, npos, 0};
    if (naive) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t e = j + 1; e <= std::min(j + cap, n); ++e)
                relax(lab, j, e, segment_cost(t, j, e, model).total_bits);
        return assemble(t, model, lab);
    }
    WindowContext ctx(t, model);
    WindowVariant variant = variant_for(model);
    for (std::size_t j = 0; j < n; ++j) {
        WindowSet ws(ctx, 1, variant, j);
        while (ws.can_app(0)) {
            ws.app(0);
            relax(lab, j, ws.end(0), ws.len(0).total_bits);
        }
    }
    return assemble(t, model, lab);
}

Partition approx_partition(const Text& t, const CostModel& model, double epsilon,
                           ApproxStats* stats) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    std::size_t n = t.size();
    std::size_t cap = model.block_cap ? *model.block_cap : n;
    WindowContext ctx(t, model);
    std::vector<double> sfx = suffix_costs_impl(ctx);
    double ubound = sfx[0] + 1.0;
    std::vector<double> thr = bucket_thresholds(ubound, epsilon);
    std::size_t buckets = thr.size();

    WindowSet ws(ctx, buckets, variant_for(model), 0);
    std::vector<Label> lab(n + 1);
    lab[0] = {0.0, npos, 0};
    std::uint64_t clamps = 0, relaxed = 0;
    for (std::size_t l = 0; l < n; ++l) {
        if (l > 0) ws.rem();
        for (std::size_t i = buckets; i-- > 0;) advance_bucket(ws, i, thr[i], clamps);
        if (!std::isfinite(lab[l].dist)) continue;
        for (const PrunedEdge& e : collect_edges(ws, l, n, sfx, cap)) {
            ++relaxed;
            relax(lab, l, e.target, e.cost);
        }
    }
    if (stats) {
        stats->bucket_count = buckets;
        stats->cost_bound = ubound;
        stats->edges_relaxed = relaxed;
        stats->monotone_clamps = clamps;
    }
    return assemble(t, model, lab);
}

std::vector<PrunedEdge> maximal_edges_at(const Text& t, const CostModel& model, double epsilon,
                                         std::size_t l) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (l >= t.size()) throw std::invalid_argument("node past the text end");
    std::size_t n = t.size();
    std::size_t cap = model.block_cap ? *model.block_cap : n;
    WindowContext ctx(t, model);
    std::vector<double> sfx = suffix_costs_impl(ctx);
    std::vector<double> thr = bucket_thresholds(sfx[0] + 1.0, epsilon);
    WindowSet ws(ctx, thr.size(), variant_for(model), l);
    std::uint64_t clamps = 0;
    for (std::size_t i = thr.size(); i-- > 0;) advance_bucket(ws, i, thr[i], clamps);
    return collect_edges(ws, l, n, sfx, cap);
}

SegmentCost verify_partition(const Text& t, const CostModel& model, const Partition& p) {
    auto reject = [] { return std::invalid_argument("malformed partition"); };
    std::size_t n = t.size();
    if (p.cuts.empty() || p.cuts.back() != n) throw reject();
    if (p.segments.size() != p.cuts.size()) throw reject();
    auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-6 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    LogTables tables(n);
    SegmentCost sum;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < p.cuts.size(); ++i) {
        std::size_t end = p.cuts[i];
        if (end <= begin || end > n) throw reject();
        SegmentCost sc = segment_cost(t, begin, end, model, tables);
        if (!close(sc.total_bits, p.segments[i].total_bits)) throw reject();
        sum.entropy_bits += sc.entropy_bits;
        sum.model_bits += sc.model_bits;
        sum.total_bits += sc.total_bits;
        begin = end;
    }
    if (!close(sum.total_bits, p.total_bits)) throw reject();
    return sum;
}

} // namespace optpart
