#include "optpart/bwt_partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "optpart/cost_model.hpp"
#include "optpart/detail/path_relax.hpp"
#include "optpart/huffman.hpp"

namespace optpart {
namespace {

constexpr std::uint32_t kNoRow = std::numeric_limits<std::uint32_t>::max();

} // namespace

PageCollection::PageCollection(std::vector<std::vector<Symbol>> pages, std::size_t sigma,
                               Text concat)
    : sigma_(sigma), pages_(std::move(pages)), concat_(std::move(concat)) {
    std::size_t at = 0;
    bounds_.reserve(pages_.size());
    for (const auto& page : pages_) {
        bounds_.emplace_back(at, at + page.size() + 1);
        at += page.size() + 1;
    }
}

PageCollection PageCollection::from_symbols(std::vector<std::vector<Symbol>> pages,
                                            std::size_t sigma) {
    if (pages.empty()) throw std::invalid_argument("no pages");
    if (sigma == 0) throw std::invalid_argument("empty alphabet");
    std::size_t total = pages.size();
    for (const auto& page : pages) {
        total += page.size();
        for (Symbol s : page)
            if (s >= sigma) throw std::invalid_argument("symbol outside alphabet");
    }
    if (total > std::numeric_limits<std::uint32_t>::max() - 2)
        throw std::length_error("page collection too large");
    std::vector<Symbol> cat;
    cat.reserve(total);
    for (std::size_t i = 0; i < pages.size(); ++i) {
        cat.insert(cat.end(), pages[i].begin(), pages[i].end());
        cat.push_back(Symbol(sigma + i));
    }
    Text t = Text::from_symbols(std::move(cat), sigma + pages.size());
    return PageCollection(std::move(pages), sigma, std::move(t));
}

PageCollection PageCollection::from_bytes(const std::vector<std::string>& raw) {
    bool present[256] = {};
    for (const auto& page : raw)
        for (unsigned char b : page) present[b] = true;
    Symbol id_of[256];
    std::size_t sigma = 0;
    for (std::size_t b = 0; b < 256; ++b)
        if (present[b]) id_of[b] = Symbol(sigma++);
    if (sigma == 0) throw std::invalid_argument("empty alphabet");
    std::vector<std::vector<Symbol>> pages;
    pages.reserve(raw.size());
    for (const auto& page : raw) {
        std::vector<Symbol> p;
        p.reserve(page.size());
        for (unsigned char b : page) p.push_back(id_of[b]);
        pages.push_back(std::move(p));
    }
    return from_symbols(std::move(pages), sigma);
}

SuffixStructures build_suffix_structures(const PageCollection& pc) {
    const Text& t = pc.concatenated();
    SuffixData sd = build_suffix_data(t);
    std::vector<std::vector<Point>> pts(pc.sigma());
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] < pc.sigma()) pts[t[i]].push_back({std::uint32_t(i), sd.isa[i + 1]});
    std::vector<PointGrid> grids;
    grids.reserve(pts.size());
    for (auto& p : pts) grids.emplace_back(std::move(p));
    return SuffixStructures{std::move(sd), std::move(grids), LogTables(t.size() + 1)};
}

std::optional<std::uint32_t> prev_active(const SuffixStructures& ss, Symbol c, std::size_t x_lo,
                                         std::size_t x_hi, std::uint32_t h) {
    if (x_lo > x_hi) return std::nullopt;
    auto p = ss.point_sets[c].max_y_below(std::uint32_t(x_lo), std::uint32_t(x_hi), h);
    if (!p) return std::nullopt;
    return p->y;
}

std::optional<std::uint32_t> next_active(const SuffixStructures& ss, Symbol c, std::size_t x_lo,
                                         std::size_t x_hi, std::uint32_t h) {
    if (x_lo > x_hi) return std::nullopt;
    auto p = ss.point_sets[c].min_y_above(std::uint32_t(x_lo), std::uint32_t(x_hi), h);
    if (!p) return std::nullopt;
    return p->y;
}

std::vector<std::uint32_t> mtf_encode(const std::vector<Symbol>& s, std::size_t sigma) {
    std::vector<Symbol> list(sigma);
    for (std::size_t i = 0; i < sigma; ++i) list[i] = Symbol(i);
    std::vector<std::uint32_t> out;
    out.reserve(s.size());
    for (Symbol c : s) {
        if (c >= sigma) {
            out.push_back(std::uint32_t(sigma));
            continue;
        }
        auto it = std::find(list.begin(), list.end(), c);
        out.push_back(std::uint32_t(it - list.begin()));
        list.erase(it);
        list.insert(list.begin(), c);
    }
    return out;
}

std::vector<Symbol> rbwt_of_window(const PageCollection& pc, const SuffixStructures& ss,
                                   std::size_t page_lo, std::size_t page_hi) {
    if (page_lo >= page_hi || page_hi > pc.page_count())
        throw std::invalid_argument("bad page range");
    std::size_t lo = pc.page_bounds(page_lo).first;
    std::size_t hi = pc.page_bounds(page_hi - 1).second - 1;
    const SuffixData& sd = ss.suffix;
    std::vector<Symbol> out;
    out.reserve(hi - lo + 1);
    for (std::size_t r = 0; r < sd.sa.size(); ++r) {
        if (r == sd.sentinel_row) continue;
        std::size_t pos = sd.sa[r] - 1;
        if (pos >= lo && pos <= hi) out.push_back(sd.bwt[r]);
    }
    return out;
}

std::vector<std::uint64_t> mtf_histogram_scratch(const PageCollection& pc,
                                                 const SuffixStructures& ss, std::size_t page_lo,
                                                 std::size_t page_hi) {
    std::vector<std::uint64_t> hist(pc.sigma() + 1, 0);
    for (std::uint32_t code : mtf_encode(rbwt_of_window(pc, ss, page_lo, page_hi), pc.sigma()))
        ++hist[code];
    return hist;
}

SegmentCost bwt_len_histogram(const std::vector<std::uint64_t>& hist, BwtCoder coder,
                              const LogTables& tables) {
    std::uint64_t n = 0;
    std::size_t distinct = 0;
    for (std::uint64_t c : hist) {
        n += c;
        distinct += c > 0;
    }
    if (n == 0) throw std::runtime_error("empty window");
    SegmentCost sc;
    if (coder == BwtCoder::entropy) {
        double acc = 0.0;
        for (std::uint64_t c : hist) acc += tables.xlogx(std::size_t(c));
        sc.entropy_bits = tables.xlogx(std::size_t(n)) - acc;
        CostModel arith;
        arith.model = ModelCostKind::arithmetic;
        sc.model_bits = model_bits(std::size_t(n), distinct, arith);
    } else {
        auto lengths = huffman_code_lengths(hist);
        double payload = 0.0;
        for (std::size_t c = 0; c < hist.size(); ++c) payload += double(hist[c]) * lengths[c];
        sc.entropy_bits = payload;
        sc.model_bits = huffman_table_bits(distinct, hist.size());
    }
    sc.total_bits = sc.entropy_bits + sc.model_bits + kPageHeaderBits;
    return sc;
}

BwtWindowState::BwtWindowState(const PageCollection& pc, const SuffixStructures& ss,
                               std::size_t first_page)
    : pc_(&pc), ss_(&ss), first_(first_page), hist_(pc.sigma() + 1, 0) {
    if (first_page > pc.page_count()) throw std::out_of_range("page index out of range");
}

void BwtWindowState::app() {
    std::size_t q = first_ + count_;
    if (q >= pc_->page_count()) throw std::out_of_range("page index out of range");
    auto [s, e] = pc_->page_bounds(q);
    std::size_t lo = count_ > 0 ? pc_->page_bounds(first_).first : s;
    // active set while inserting pos: [lo, pos - 1]; npos marks it empty
    for (std::size_t pos = s; pos < e; ++pos)
        toggle(pos, true, lo, pos == lo ? npos : pos - 1);
    ++count_;
}

void BwtWindowState::prepend() {
    if (first_ == 0) throw std::out_of_range("page index out of range");
    std::size_t q = first_ - 1;
    auto [s, e] = pc_->page_bounds(q);
    std::size_t hi = count_ > 0 ? pc_->page_bounds(first_ + count_ - 1).second - 1 : e - 1;
    for (std::size_t pos = e; pos-- > s;) toggle(pos, true, pos + 1, hi);
    first_ = q;
    ++count_;
}

void BwtWindowState::rem() {
    if (count_ == 0) throw std::runtime_error("nothing to remove");
    auto [s, e] = pc_->page_bounds(first_);
    std::size_t hi = pc_->page_bounds(first_ + count_ - 1).second - 1;
    for (std::size_t pos = s; pos < e; ++pos) toggle(pos, false, pos + 1, hi);
    ++first_;
    --count_;
}

SegmentCost BwtWindowState::len(BwtCoder coder) const {
    if (count_ == 0) throw std::runtime_error("empty window");
    return bwt_len_histogram(hist_, coder, ss_->tables);
}

/*
 * Flip one symbol of the concatenation in or out of the window. x_lo..x_hi is
 * the set of positions currently active besides pos itself; during
 * left-to-right absorption that is everything to the left, during
 * right-to-left everything to the right. All code arithmetic runs over that
 * set, so insertion and removal are exact mirrors.
 */
void BwtWindowState::toggle(std::size_t pos, bool insert, std::size_t x_lo, std::size_t x_hi) {
    std::uint64_t cells = 0;
    auto bump = [&](std::size_t cell, bool up) {
        if (up) {
            ++hist_[cell];
        } else {
            if (hist_[cell] == 0) throw std::logic_error("histogram underflow");
            --hist_[cell];
        }
        ++cells;
    };
    auto done = [&] {
        ++(insert ? counters_.symbols_inserted : counters_.symbols_removed);
        counters_.cell_changes += cells;
        counters_.max_cell_changes_per_symbol =
            std::max(counters_.max_cell_changes_per_symbol, cells);
    };

    const Text& t = pc_->concatenated();
    std::size_t sigma = pc_->sigma();
    Symbol c = t[pos];
    if (c >= sigma) { // separator: reserved code, recency list untouched
        bump(sigma, insert);
        done();
        return;
    }

    bool no_active = x_hi == npos || x_lo > x_hi;
    std::uint32_t h = ss_->suffix.isa[pos + 1];

    // Recency list just before row h: seen symbols by decreasing last row,
    // then never-seen symbols by increasing id.
    seen_.clear();
    list_without_.clear();
    for (Symbol u = 0; u < sigma; ++u) {
        std::optional<std::uint32_t> r;
        if (!no_active) {
            ++counters_.range_queries;
            r = prev_active(*ss_, u, x_lo, x_hi, h);
        }
        if (r)
            seen_.push_back({*r, u});
        else
            list_without_.push_back(u); // unseen tail, already ascending
    }
    std::sort(seen_.begin(), seen_.end(), std::greater<>());
    std::vector<Symbol> tail = list_without_;
    list_without_.clear();
    for (auto& [row, u] : seen_) list_without_.push_back(u);
    list_without_.insert(list_without_.end(), tail.begin(), tail.end());

    // First active occurrence of every symbol after h; the one of c itself
    // bounds how far the disturbance can reach.
    std::uint32_t h_next = kNoRow;
    events_.clear();
    for (Symbol u = 0; u < sigma && !no_active; ++u) {
        ++counters_.range_queries;
        auto r = next_active(*ss_, u, x_lo, x_hi, h);
        if (!r) continue;
        if (u == c)
            h_next = *r;
        else
            events_.push_back({*r, u});
    }
    std::sort(events_.begin(), events_.end());

    std::size_t code_c =
        std::find(list_without_.begin(), list_without_.end(), c) - list_without_.begin();
    bump(code_c, insert);

    // Lockstep simulation: list_with_ sees the toggled symbol at row h,
    // list_without_ does not. Wherever the two lists give a symbol different
    // codes, the histogram moves one count between those codes.
    list_with_ = list_without_;
    list_with_.erase(list_with_.begin() + code_c);
    list_with_.insert(list_with_.begin(), c);

    auto shift = [&](Symbol u) {
        if (list_with_ == list_without_) return false;
        std::size_t iw = std::find(list_with_.begin(), list_with_.end(), u) - list_with_.begin();
        std::size_t io =
            std::find(list_without_.begin(), list_without_.end(), u) - list_without_.begin();
        if (iw != io) {
            bump(insert ? io : iw, false);
            bump(insert ? iw : io, true);
        }
        return true;
    };
    for (auto& [row, u] : events_) {
        if (row >= h_next) break;
        if (!shift(u)) break;
        list_with_.erase(std::find(list_with_.begin(), list_with_.end(), u));
        list_with_.insert(list_with_.begin(), u);
        list_without_.erase(std::find(list_without_.begin(), list_without_.end(), u));
        list_without_.insert(list_without_.begin(), u);
    }
    if (h_next != kNoRow) shift(c); // the next occurrence of c itself
    done();
}

namespace {

std::vector<double> page_suffix_costs(const PageCollection& pc, const SuffixStructures& ss,
                                      BwtCoder coder) {
    std::size_t m = pc.page_count();
    std::vector<double> sfx(m, 0.0);
    BwtWindowState w(pc, ss, m);
    for (std::size_t q = m; q-- > 0;) {
        w.prepend();
        sfx[q] = w.len(coder).total_bits;
    }
    return sfx;
}

Partition assemble_pages(const PageCollection& pc, const SuffixStructures& ss, BwtCoder coder,
                         const std::vector<detail::Label>& lab) {
    std::size_t m = pc.page_count();
    if (!std::isfinite(lab[m].dist)) throw std::logic_error("no partition found");
    Partition p;
    p.cuts = detail::backtrack_cuts(lab, m);
    std::size_t begin = 0;
    for (std::size_t end : p.cuts) {
        SegmentCost sc = bwt_len_histogram(mtf_histogram_scratch(pc, ss, begin, end), coder,
                                           ss.tables);
        p.total_bits += sc.total_bits;
        p.segments.push_back(sc);
        begin = end;
    }
    return p;
}

} // namespace

Partition page_exact_partition(const PageCollection& pc, const SuffixStructures& ss,
                               BwtCoder coder) {
    std::size_t m = pc.page_count();
    std::vector<detail::Label> lab(m + 1);
    lab[0] = {0.0, npos, 0};
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t e = j + 1; e <= m; ++e) {
            double cost = bwt_len_histogram(mtf_histogram_scratch(pc, ss, j, e), coder, ss.tables)
                              .total_bits;
            detail::relax(lab, j, e, cost);
        }
    return assemble_pages(pc, ss, coder, lab);
}

Partition page_aligned_partition(const PageCollection& pc, const SuffixStructures& ss,
                                 double epsilon, BwtCoder coder, ApproxStats* stats) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    std::size_t m = pc.page_count();
    std::vector<double> sfx = page_suffix_costs(pc, ss, coder);
    double ubound = sfx[0] + 1.0;
    std::vector<double> thr = detail::bucket_thresholds(ubound, epsilon);

    std::vector<detail::Label> lab(m + 1);
    lab[0] = {0.0, npos, 0};
    std::uint64_t clamps = 0, relaxed = 0;
    for (std::size_t l = 0; l < m; ++l) {
        if (!std::isfinite(lab[l].dist)) continue;
        // Window costs from this node, under a running maximum: page group
        // costs are not provably monotone, and the maximum keeps the bucket
        // rule consistent with the text partitioner's.
        BwtWindowState ws(pc, ss, l);
        std::vector<double> cost, runmax;
        double run = 0.0;
        while (ws.can_app() && run <= thr.back()) {
            ws.app();
            double c = ws.len(coder).total_bits;
            if (!cost.empty() && c < run - 1e-9 * std::max(1.0, run)) ++clamps;
            run = std::max(run, c);
            cost.push_back(c);
            runmax.push_back(run);
        }
        std::size_t last = npos;
        for (double t : thr) {
            // longest reach whose running-max cost stays under the bucket cap
            std::size_t take = std::upper_bound(runmax.begin(), runmax.end(), t) - runmax.begin();
            if (take == 0 || l + take == last) continue;
            last = l + take;
            ++relaxed;
            detail::relax(lab, l, last, cost[take - 1]);
        }
        if (last != m) {
            ++relaxed;
            detail::relax(lab, l, m, sfx[l]);
        }
    }
    if (stats) {
        stats->bucket_count = thr.size();
        stats->cost_bound = ubound;
        stats->edges_relaxed = relaxed;
        stats->monotone_clamps = clamps;
    }
    return assemble_pages(pc, ss, coder, lab);
}

} // namespace optpart
