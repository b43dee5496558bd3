#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optpart/partitioner.hpp"
#include "optpart/range_search.hpp"
#include "optpart/suffix_array.hpp"
#include "optpart/text.hpp"

namespace optpart {

// A sequence of pages over a common dense alphabet 0..sigma-1, concatenated
// with one unique separator per page: page i is followed by symbol sigma + i,
// so every separator sorts above every ordinary symbol and no two match.
class PageCollection {
public:
    // Distinct bytes across all pages become the alphabet, densified in byte
    // order.
    static PageCollection from_bytes(const std::vector<std::string>& raw);
    static PageCollection from_symbols(std::vector<std::vector<Symbol>> pages, std::size_t sigma);

    std::size_t page_count() const { return pages_.size(); }
    std::size_t sigma() const { return sigma_; }
    const std::vector<std::vector<Symbol>>& pages() const { return pages_; }
    const Text& concatenated() const { return concat_; }

    // [start, end) span of page i in concatenated(), trailing separator
    // included; the spans tile [0, size).
    std::pair<std::size_t, std::size_t> page_bounds(std::size_t i) const { return bounds_[i]; }

private:
    PageCollection(std::vector<std::vector<Symbol>> pages, std::size_t sigma, Text concat);

    std::size_t sigma_;
    std::vector<std::vector<Symbol>> pages_;
    Text concat_;
    std::vector<std::pair<std::size_t, std::size_t>> bounds_;
};

// Immutable query-side state: suffix array, inverse, BWT of the concatenation
// (virtual sentinel included), and one point set per ordinary symbol c,
// P_c = {(i, isa[i+1]) : T[i] = c}, each behind a range-search grid. A row is
// "active" for a window when its originating position sa[r]-1 lies inside the
// window's span.
struct SuffixStructures {
    SuffixData suffix;
    std::vector<PointGrid> point_sets;
    LogTables tables;
};

SuffixStructures build_suffix_structures(const PageCollection& pc);

// Rank of the last active occurrence of c strictly before row h (active:
// originating position within [x_lo, x_hi]); nullopt when there is none.
std::optional<std::uint32_t> prev_active(const SuffixStructures& ss, Symbol c, std::size_t x_lo,
                                         std::size_t x_hi, std::uint32_t h);

// Rank of the first active occurrence of c strictly after row h.
std::optional<std::uint32_t> next_active(const SuffixStructures& ss, Symbol c, std::size_t x_lo,
                                         std::size_t x_hi, std::uint32_t h);

// MTF codes of s: recency list seeded with 0..sigma-1 ascending; symbols
// >= sigma (separators) emit the reserved code sigma and leave the list
// untouched.
std::vector<std::uint32_t> mtf_encode(const std::vector<Symbol>& s, std::size_t sigma);

// BWT(T) restricted to rows whose originating position lies in pages
// [page_lo, page_hi), in row order. The from-scratch reference for the
// incremental window below.
std::vector<Symbol> rbwt_of_window(const PageCollection& pc, const SuffixStructures& ss,
                                   std::size_t page_lo, std::size_t page_hi);

// Histogram over codes 0..sigma of MTF(rbwt_of_window(...)).
std::vector<std::uint64_t> mtf_histogram_scratch(const PageCollection& pc,
                                                 const SuffixStructures& ss, std::size_t page_lo,
                                                 std::size_t page_hi);

enum class BwtCoder { entropy, huffman };

constexpr double kPageHeaderBits = 32.0;

// Cost of one MTF-code histogram. entropy: n*H0 of the histogram plus an
// arithmetic-style model charge (distinct * log2 n + log2 n / n); huffman:
// canonical Huffman payload plus code-table bits. Both add kPageHeaderBits.
// The payload/entropy part lands in entropy_bits, the rest in model_bits.
SegmentCost bwt_len_histogram(const std::vector<std::uint64_t>& hist, BwtCoder coder,
                              const LogTables& tables);

struct BwtCounters {
    std::uint64_t symbols_inserted = 0;
    std::uint64_t symbols_removed = 0;
    std::uint64_t range_queries = 0;
    std::uint64_t cell_changes = 0;              // histogram cells bumped, total
    std::uint64_t max_cell_changes_per_symbol = 0; // bound: 2*sigma + 1
};

/*
 * A window over a contiguous page range that maintains F_w, the histogram of
 * MTF(RBWT(window)), under page-at-a-time growth and shrinkage. Each symbol
 * toggled in or out disturbs at most 2*sigma + 1 histogram cells: its own
 * code, and for every other symbol whose first active occurrence between the
 * toggled row and the next occurrence of the same symbol exists, one
 * decrement and one increment. The affected rows and the recency list are
 * recovered with 2*sigma range queries against the point sets.
 */
class BwtWindowState {
public:
    BwtWindowState(const PageCollection& pc, const SuffixStructures& ss,
                   std::size_t first_page = 0);

    std::size_t first_page() const { return first_; }
    std::size_t page_count() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool can_app() const { return first_ + count_ < pc_->page_count(); }

    // Absorb the page after the window (left-to-right symbol insertion).
    void app();
    // Drop the window's first page. Throws on an empty window.
    void rem();
    // Absorb the page before the window (right-to-left insertion); only
    // valid when first_page() > 0. Suffix sweeps grow windows this way.
    void prepend();

    SegmentCost len(BwtCoder coder) const;
    const std::vector<std::uint64_t>& histogram() const { return hist_; }
    const BwtCounters& counters() const { return counters_; }

private:
    void toggle(std::size_t pos, bool insert, std::size_t x_lo, std::size_t x_hi);

    const PageCollection* pc_;
    const SuffixStructures* ss_;
    std::size_t first_;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> hist_;
    BwtCounters counters_;
    // scratch buffers reused across toggles
    std::vector<std::pair<std::uint32_t, Symbol>> seen_;
    std::vector<std::pair<std::uint32_t, Symbol>> events_;
    std::vector<Symbol> list_with_, list_without_;
};

// Optimal page-aligned grouping by DP over from-scratch window costs. The
// returned Partition is over page indices: cuts end at page_count().
Partition page_exact_partition(const PageCollection& pc, const SuffixStructures& ss,
                               BwtCoder coder);

// (1 + epsilon)-approximate page-aligned grouping: the same pruned-edge
// shortest path the text partitioner runs, with nodes at page boundaries and
// costs served by BwtWindowState. Throws std::invalid_argument for
// epsilon <= 0.
Partition page_aligned_partition(const PageCollection& pc, const SuffixStructures& ss,
                                 double epsilon, BwtCoder coder, ApproxStats* stats = nullptr);

} // namespace optpart
