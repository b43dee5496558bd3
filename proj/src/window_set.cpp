#include "optpart/window_set.hpp"

#include <cassert>
#include <stdexcept>

namespace optpart {

TextArrays build_text_arrays(const Text& t) {
    TextArrays a;
    a.prev = build_last_occurrence(t);
    a.rank.resize(t.size());
    std::vector<std::uint32_t> seen(t.sigma(), 0);
    for (std::size_t p = 0; p < t.size(); ++p)
        a.rank[p] = ++seen[t[p]];
    return a;
}

WindowContext::WindowContext(const Text& t, const CostModel& m)
    : text(&t), model(m), tables(t.size() + 1), main_arrays(build_text_arrays(t)) {
    if (model.korder() && model.k > 0 && t.size() > model.k) {
        // texts of at most k symbols have no (k+1)-gram anywhere; every
        // segment then prices as model bits only and needs no gram estimators
        grams_succ = remap_qgrams(t, model.k + 1);
        grams_ctx = remap_qgrams(t, model.k);
        succ_arrays = build_text_arrays(*grams_succ);
        ctx_arrays = build_text_arrays(*grams_ctx);
    }
}

/*
 * One estimator over one text. Each window keeps an accumulator
 *   E_i = sum_c xlogx(count_i[c])        (plain)
 *   E_i = sum_c logfact(count_i[c])      (adaptive)
 * so that window entropy is xlogx(len) - E_i resp. logfact(len) - E_i.
 *
 * The compact layout does not store per-window counts. It keeps
 *   B[c]    = occurrences of c in t[0, l)
 *   rank[p] = occurrences of t[p] in t[0, p]   (precomputed)
 * so the count of c in [l, p] is rank[p] - B[c] whenever p is the last
 * occurrence of c in the window. Last occurrences live in one sorted list
 * per symbol, threaded through position-indexed links; a position appears
 * at most once even when it is the last occurrence for several windows.
 */
struct WindowSet::FlatSet {
    const Text* t;
    const LogTables* tables;
    const TextArrays* arrays;
    bool adaptive;
    bool compact;
    std::size_t m;
    std::size_t l;
    std::vector<std::size_t> ends; // exclusive; ends[i] == l means empty
    std::vector<double> E;
    std::vector<std::uint32_t> distinct;
    WindowCounters* counters;

    // simple layout
    std::vector<std::vector<std::uint32_t>> counts;

    // compact layout
    std::vector<std::uint32_t> B;
    std::vector<std::size_t> head, nxt, prv;
    std::vector<char> in_list;

    FlatSet(const Text& text, const LogTables& tb, const TextArrays& ta, bool adaptive_,
            bool compact_, std::size_t m_, std::size_t start_left, WindowCounters* ctr)
        : t(&text), tables(&tb), arrays(&ta), adaptive(adaptive_), compact(compact_), m(m_),
          l(start_left), ends(m_, start_left), E(m_, 0.0), distinct(m_, 0), counters(ctr) {
        if (compact) {
            B.assign(t->sigma(), 0);
            for (std::size_t p = 0; p < l && p < t->size(); ++p)
                ++B[(*t)[p]];
            head.assign(t->sigma(), npos);
            nxt.assign(t->size(), npos);
            prv.assign(t->size(), npos);
            in_list.assign(t->size(), 0);
        } else {
            counts.assign(m, std::vector<std::uint32_t>(t->sigma(), 0));
        }
    }

    double step(std::uint32_t count_after) const {
        return adaptive ? tables->logfact(count_after) - tables->logfact(count_after - 1)
                        : tables->xlogx(count_after) - tables->xlogx(count_after - 1);
    }

    std::uint32_t count_after_app(std::size_t i) const {
        std::size_t pos = ends[i];
        Symbol c = (*t)[pos];
        return compact ? arrays->rank[pos] - B[c] : counts[i][c] + 1;
    }

    void push_front(Symbol c, std::size_t pos) {
        nxt[pos] = head[c];
        prv[pos] = npos;
        if (head[c] != npos)
            prv[head[c]] = pos;
        head[c] = pos;
        in_list[pos] = 1;
    }

    void unlink(Symbol c, std::size_t pos) {
        if (prv[pos] != npos)
            nxt[prv[pos]] = nxt[pos];
        else
            head[c] = nxt[pos];
        if (nxt[pos] != npos)
            prv[nxt[pos]] = prv[pos];
        nxt[pos] = prv[pos] = npos;
        in_list[pos] = 0;
    }

    void insert_after(std::size_t p, std::size_t pos) {
        nxt[pos] = nxt[p];
        prv[pos] = p;
        if (nxt[p] != npos)
            prv[nxt[p]] = pos;
        nxt[p] = pos;
        in_list[pos] = 1;
    }

    // Window i gains the symbol at position ends[i]; register that position
    // as the window's new last occurrence of c.
    void list_insert(std::size_t i, std::size_t pos, Symbol c) {
        ++counters->list_ops;
        std::size_t p = arrays->prev[pos];
        if (p == npos || p < l) {
            // no c inside [l, pos): every list entry sits at or beyond pos
            if (head[c] == pos)
                return; // already the last occurrence of a later window
            push_front(c, pos);
            return;
        }
        // p is the last occurrence of c in window i and must be listed
        assert(in_list[p]);
        if (i == 0 || p >= ends[i - 1]) {
            // p serves no earlier window; after this append it serves none
            if (nxt[p] == pos)
                unlink(c, p); // pos already listed for a later window
            else {
                // splice pos into p's place; order is kept because no c
                // occurs strictly between p and pos
                std::size_t before = prv[p];
                unlink(c, p);
                if (before == npos)
                    push_front(c, pos);
                else
                    insert_after(before, pos);
            }
        } else {
            // p stays: it is still the last occurrence for a window < i
            if (nxt[p] != pos)
                insert_after(p, pos);
        }
    }

    void app(std::size_t i) {
        std::size_t pos = ends[i];
        assert(pos < t->size());
        Symbol c = (*t)[pos];
        std::uint32_t a;
        if (compact) {
            a = arrays->rank[pos] - B[c];
        } else {
            a = ++counts[i][c];
        }
        E[i] += step(a);
        ++counters->accumulator_updates;
        if (a == 1)
            ++distinct[i];
        if (compact)
            list_insert(i, pos, c);
        ++ends[i];
    }

    // Advance l by one in all windows. Empty windows slide. Safe to call
    // with every window empty (needed when this set tracks grams that start
    // later than the current left end).
    void rem() {
        if (l >= t->size()) {
            // no symbol here; grams ran out before the main text did
            ++l;
            for (std::size_t i = 0; i < m; ++i)
                if (ends[i] < l)
                    ends[i] = l;
            return;
        }
        Symbol c = (*t)[l];
        bool any = false;
        for (std::size_t i = 0; i < m; ++i)
            if (ends[i] > l) {
                any = true;
                break;
            }
        if (any) {
            if (compact) {
                // walk the last-occurrence list in step with the sorted ends;
                // window i's entry is the largest listed position below its end
                std::size_t ptr = head[c];
                assert(ptr != npos);
                for (std::size_t i = 0; i < m; ++i) {
                    if (ends[i] <= l)
                        continue;
                    while (nxt[ptr] != npos && nxt[ptr] < ends[i]) {
                        ptr = nxt[ptr];
                        ++counters->list_ops;
                    }
                    std::uint32_t a = arrays->rank[ptr] - B[c];
                    E[i] -= step(a);
                    ++counters->accumulator_updates;
                    if (a == 1)
                        --distinct[i];
                }
                if (head[c] == l)
                    unlink(c, l);
            } else {
                for (std::size_t i = 0; i < m; ++i) {
                    if (ends[i] <= l)
                        continue;
                    std::uint32_t a = counts[i][c]--;
                    E[i] -= step(a);
                    ++counters->accumulator_updates;
                    if (a == 1)
                        --distinct[i];
                }
            }
        }
        if (compact)
            ++B[c];
        ++l;
        for (std::size_t i = 0; i < m; ++i)
            if (ends[i] < l)
                ends[i] = l;
    }

    bool check_lists() const {
        if (!compact)
            return true;
        // recompute every window's last occurrence per symbol and compare
        std::vector<std::vector<std::size_t>> expect(t->sigma());
        for (Symbol c = 0; c < t->sigma(); ++c) {
            std::size_t last_added = npos;
            for (std::size_t i = 0; i < m; ++i) {
                if (ends[i] <= l)
                    continue;
                std::size_t found = npos;
                for (std::size_t p = ends[i]; p-- > l;) {
                    if ((*t)[p] == c) {
                        found = p;
                        break;
                    }
                }
                if (found != npos && found != last_added) {
                    expect[c].push_back(found);
                    last_added = found;
                }
            }
        }
        for (Symbol c = 0; c < t->sigma(); ++c) {
            std::size_t p = head[c];
            std::size_t k = 0;
            std::size_t prev_pos = npos;
            while (p != npos) {
                if (k >= expect[c].size() || expect[c][k] != p)
                    return false;
                if (prev_pos != npos && (p <= prev_pos || prv[p] != prev_pos))
                    return false;
                prev_pos = p;
                p = nxt[p];
                ++k;
            }
            if (k != expect[c].size())
                return false;
        }
        return true;
    }
};

namespace {

WindowVariant normalize(const CostModel& model, WindowVariant v) {
    if (v == WindowVariant::adaptive && !model.adaptive())
        throw std::invalid_argument("adaptive variant requires an adaptive family");
    if (v == WindowVariant::korder) {
        if (!model.korder())
            throw std::invalid_argument("korder variant requires a k-order family");
    } else if (model.korder() && model.k > 0) {
        throw std::invalid_argument("k-order family requires the korder variant");
    }
    return v;
}

} // namespace

WindowSet::WindowSet(const WindowContext& ctx, std::size_t window_count, WindowVariant variant,
                     std::size_t start_left)
    : ctx_(&ctx), variant_(normalize(ctx.model, variant)), m_(window_count), left_(start_left),
      ends_(window_count, start_left) {
    if (window_count == 0)
        throw std::invalid_argument("need at least one window");
    if (start_left >= ctx.text->size())
        throw std::invalid_argument("window start beyond text");
    bool adaptive = ctx.model.adaptive();
    if (variant_ == WindowVariant::korder && ctx.model.k > 0) {
        // both gram estimators use the compact layout: gram alphabets can be
        // nearly as large as the text and per-window count arrays would not
        // scale; on a text of at most k symbols there are no grams to track
        if (ctx.grams_succ) {
            sub_succ_ = std::make_unique<FlatSet>(*ctx.grams_succ, ctx.tables, ctx.succ_arrays,
                                                  adaptive, true, m_, start_left, &counters_);
            sub_ctx_ = std::make_unique<FlatSet>(*ctx.grams_ctx, ctx.tables, ctx.ctx_arrays,
                                                 adaptive, true, m_, start_left, &counters_);
        }
    } else {
        // a k-order model with k == 0 degenerates to the H0 measurement
        bool compact = variant_ == WindowVariant::compact || variant_ == WindowVariant::adaptive;
        flat_ = std::make_unique<FlatSet>(*ctx.text, ctx.tables, ctx.main_arrays, adaptive,
                                          compact, m_, start_left, &counters_);
    }
}

WindowSet::WindowSet(WindowSet&&) noexcept = default;
WindowSet& WindowSet::operator=(WindowSet&&) noexcept = default;
WindowSet::~WindowSet() = default;

bool WindowSet::can_app(std::size_t i) const {
    if (ends_[i] >= ctx_->text->size())
        return false;
    if (ctx_->model.block_cap && length(i) >= *ctx_->model.block_cap)
        return false;
    if (i + 1 < m_ && ends_[i] >= ends_[i + 1])
        return false;
    return true;
}

void WindowSet::app(std::size_t i) {
    if (i >= m_)
        throw std::invalid_argument("window index out of range");
    if (ends_[i] >= ctx_->text->size())
        throw std::runtime_error("window at text end");
    if (i + 1 < m_ && ends_[i] >= ends_[i + 1])
        throw std::runtime_error("window would overtake its right neighbor");
    ++counters_.app_calls;
    if (flat_) {
        flat_->app(i);
        ends_[i] = flat_->ends[i];
        return;
    }
    std::size_t k = ctx_->model.k;
    std::size_t new_len = ends_[i] + 1 - left_;
    if (new_len > k) {
        // the gram windows cover positions [l, end - k); they gain their
        // next gram exactly when the main window grows past k symbols
        sub_succ_->app(i);
        sub_ctx_->app(i);
    }
    ++ends_[i];
}

void WindowSet::rem() {
    bool any = false;
    for (std::size_t i = 0; i < m_; ++i)
        if (ends_[i] > left_) {
            any = true;
            break;
        }
    if (!any)
        throw std::runtime_error("nothing to remove");
    ++counters_.rem_calls;
    if (flat_) {
        flat_->rem();
        left_ = flat_->l;
        for (std::size_t i = 0; i < m_; ++i)
            ends_[i] = flat_->ends[i];
        return;
    }
    if (sub_succ_) {
        sub_succ_->rem();
        sub_ctx_->rem();
    }
    ++left_;
    for (std::size_t i = 0; i < m_; ++i)
        if (ends_[i] < left_)
            ends_[i] = left_;
}

SegmentCost WindowSet::len(std::size_t i) const {
    if (i >= m_)
        throw std::invalid_argument("window index out of range");
    std::size_t L = length(i);
    if (L == 0)
        throw std::runtime_error("empty window");
    const CostModel& model = ctx_->model;
    SegmentCost cost;
    if (flat_) {
        cost.entropy_bits = (model.adaptive() ? ctx_->tables.logfact(L) : ctx_->tables.xlogx(L)) -
                            flat_->E[i];
        cost.model_bits = model_bits(L, flat_->distinct[i], model);
    } else {
        // the xlogx(sub-length) terms of the two gram estimators cancel, so
        // the k-order entropy is just the difference of accumulators
        if (L > model.k) {
            cost.entropy_bits = sub_ctx_->E[i] - sub_succ_->E[i];
            cost.model_bits = model_bits(L, sub_succ_->distinct[i], model);
        } else {
            cost.entropy_bits = 0.0;
            cost.model_bits = model_bits(L, 0, model);
        }
    }
    cost.total_bits = model.lambda * cost.entropy_bits + cost.model_bits + model.header_bits;
    return cost;
}

double WindowSet::peek_app_total(std::size_t i) const {
    if (ends_[i] >= ctx_->text->size())
        throw std::runtime_error("window at text end");
    const CostModel& model = ctx_->model;
    std::size_t L = length(i) + 1;
    double entropy, mbits;
    if (flat_) {
        std::uint32_t a = flat_->count_after_app(i);
        double E = flat_->E[i] + flat_->step(a);
        entropy = (model.adaptive() ? ctx_->tables.logfact(L) : ctx_->tables.xlogx(L)) - E;
        mbits = model_bits(L, flat_->distinct[i] + (a == 1 ? 1 : 0), model);
    } else if (L > model.k) {
        std::uint32_t a_succ = sub_succ_->count_after_app(i);
        std::uint32_t a_ctx = sub_ctx_->count_after_app(i);
        double e_succ = sub_succ_->E[i] + sub_succ_->step(a_succ);
        double e_ctx = sub_ctx_->E[i] + sub_ctx_->step(a_ctx);
        entropy = e_ctx - e_succ;
        mbits = model_bits(L, sub_succ_->distinct[i] + (a_succ == 1 ? 1 : 0), model);
    } else {
        entropy = 0.0;
        mbits = model_bits(L, 0, model);
    }
    return model.lambda * entropy + mbits + model.header_bits;
}

bool WindowSet::check_lists() const {
    if (flat_)
        return flat_->check_lists();
    if (!sub_succ_)
        return true;
    return sub_succ_->check_lists() && sub_ctx_->check_lists();
}

} // namespace optpart
