#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "optpart/cost_model.hpp"
#include "optpart/text.hpp"

namespace optpart {

// Counter layout of the estimator.
//  simple  - one count array per window, O(sigma * m) space
//  compact - shared prefix ranks plus per-symbol last-occurrence lists,
//            O(n + m) space regardless of sigma
//  adaptive - compact layout with the adaptive accumulator (requires an
//            adaptive family)
//  korder  - two synchronized sub-estimators over the (k+1)-gram and k-gram
//            texts (requires a k-order family)
enum class WindowVariant { simple, compact, adaptive, korder };

struct WindowCounters {
    std::uint64_t accumulator_updates = 0;
    std::uint64_t list_ops = 0;
    std::uint64_t app_calls = 0;
    std::uint64_t rem_calls = 0;
};

// Arrays precomputed once per text: rank[p] = occurrences of t[p] in t[0, p],
// prev[p] = previous occurrence of t[p] (npos if none). Together with a
// per-symbol count of the prefix left of the window they recover any
// window-local symbol count in O(1).
struct TextArrays {
    std::vector<std::uint32_t> rank;
    std::vector<std::size_t> prev;
};

TextArrays build_text_arrays(const Text& t);

// Shared immutable state for all window sets over one (text, model) pair.
// Building it costs O(n k); individual window sets are then cheap enough to
// recreate per start position, which the exact solver does n times.
struct WindowContext {
    const Text* text = nullptr;
    CostModel model;
    LogTables tables;
    TextArrays main_arrays;
    std::optional<Text> grams_succ; // (k+1)-gram text, k-order families only
    std::optional<Text> grams_ctx;  // k-gram text
    TextArrays succ_arrays, ctx_arrays;

    explicit WindowContext(const Text& t, const CostModel& m);
};

/*
 * A set of windows w_0 .. w_{m-1} sharing a left endpoint l, with exclusive
 * ends end(0) <= end(1) <= ... kept sorted at all times. rem() advances l in
 * every window at once; app(i) extends window i by one symbol; len(i) prices
 * the current window under the cost model. All updates are table-lookup
 * increments, so len(i) agrees with a from-scratch evaluation of the same
 * segment up to float rounding.
 *
 * app(i) requires end(i) < end(i+1) beforehand: the last-occurrence lists
 * encode which window owns each entry through the sorted-ends order, and an
 * append that overtook the next window would corrupt that encoding. Callers
 * that advance several windows do so from the largest index down, which
 * keeps the order intact without extra bookkeeping.
 */
class WindowSet {
public:
    WindowSet(const WindowContext& ctx, std::size_t window_count, WindowVariant variant,
              std::size_t start_left = 0);
    WindowSet(WindowSet&&) noexcept;
    WindowSet& operator=(WindowSet&&) noexcept;
    ~WindowSet();

    std::size_t window_count() const { return m_; }
    std::size_t left() const { return left_; }
    std::size_t end(std::size_t i) const { return ends_[i]; }
    std::size_t length(std::size_t i) const { return ends_[i] - left_; }
    bool empty(std::size_t i) const { return ends_[i] == left_; }

    // True when app(i) is legal: not at the text end, under the block cap,
    // and not about to overtake window i+1.
    bool can_app(std::size_t i) const;

    // Extend window i one symbol to the right.
    void app(std::size_t i);

    // Drop the leftmost symbol from every window. Windows that are already
    // empty slide along with l. Throws when every window is empty.
    void rem();

    // Cost of window i under the model. Throws on an empty window.
    SegmentCost len(std::size_t i) const;

    // total_bits that len(i) would report after app(i), without mutating.
    double peek_app_total(std::size_t i) const;

    const WindowCounters& counters() const { return counters_; }

    // Debug validation of the last-occurrence lists against a direct
    // recomputation; true for layouts that keep no lists.
    bool check_lists() const;

private:
    struct FlatSet; // one text, one counter layout
    void sub_app(std::size_t i);

    const WindowContext* ctx_;
    WindowVariant variant_;
    std::size_t m_;
    std::size_t left_;
    std::vector<std::size_t> ends_;
    WindowCounters counters_;
    std::unique_ptr<FlatSet> flat_;       // non-korder
    std::unique_ptr<FlatSet> sub_succ_;   // korder: (k+1)-gram estimator
    std::unique_ptr<FlatSet> sub_ctx_;    // korder: k-gram estimator
};

} // namespace optpart
