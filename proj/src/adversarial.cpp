#include "optpart/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "optpart/suffix_array.hpp"

namespace optpart {
namespace {

double h0_of_counts(const std::vector<std::uint32_t>& counts, const LogTables& tables) {
    std::size_t n = 0;
    double acc = 0.0;
    for (std::uint32_t c : counts) {
        n += c;
        acc += tables.xlogx(c);
    }
    return tables.xlogx(n) - acc;
}

} // namespace

std::vector<Symbol> de_bruijn_order2(std::size_t alpha) {
    // Hierholzer over the complete digraph on alpha vertices (self-loops
    // included): every vertex has out-degree alpha, so an Eulerian circuit
    // of alpha^2 edges exists; the visited-vertex sequence minus the closing
    // repeat is the cyclic order-2 De Bruijn string.
    std::vector<std::uint32_t> next(alpha, 0);
    std::vector<Symbol> stack{0}, circuit;
    while (!stack.empty()) {
        Symbol v = stack.back();
        if (next[v] < alpha) {
            stack.push_back(Symbol(next[v]));
            ++next[v];
        } else {
            circuit.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    circuit.pop_back();
    return circuit;
}

GapInstance generate_gap_instance(std::size_t sigma, std::size_t alpha) {
    if (alpha < 2) throw std::invalid_argument("alpha must be at least 2");
    if (sigma % alpha != 0) throw std::invalid_argument("alpha must divide sigma");
    std::size_t blocks = sigma / alpha;
    std::vector<Symbol> base = de_bruijn_order2(alpha);
    std::vector<Symbol> all;
    all.reserve(sigma * alpha);
    for (std::size_t b = 0; b < blocks; ++b)
        for (Symbol s : base) all.push_back(Symbol(b * alpha + s));
    return GapInstance{sigma, alpha, blocks, Text::from_symbols(std::move(all), sigma)};
}

std::vector<Symbol> cyclic_bwt(const Text& t) {
    std::size_t n = t.size();
    // Rotations ranked through the suffix array of t twice over: the suffix
    // of the doubled text starting at i < n begins with rotation i.
    std::vector<Symbol> doubled;
    doubled.reserve(2 * n);
    for (std::size_t rep = 0; rep < 2; ++rep)
        for (std::size_t i = 0; i < n; ++i) doubled.push_back(t[i]);
    SuffixData sd = build_suffix_data(Text::from_symbols(std::move(doubled), t.sigma()));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return sd.isa[a] < sd.isa[b]; });
    std::vector<Symbol> out;
    out.reserve(n);
    for (std::size_t i : order) out.push_back(t[(i + n - 1) % n]);
    return out;
}

BoosterCosts booster_partition_costs(const GapInstance& g) {
    const Text& t = g.text;
    std::size_t n = t.size();
    LogTables tables(n);
    double model = std::log2(double(g.sigma));

    // One segment: L is a permutation of the text, so whole-L counts are the
    // text's counts.
    std::vector<std::uint32_t> counts(g.sigma, 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[t[i]];
    double whole = h0_of_counts(counts, tables) + model;

    // One segment per context c: the multiset of symbols cyclically
    // preceding c's occurrences, i.e. L_c, without needing L itself.
    std::vector<std::vector<std::uint32_t>> ctx(g.sigma,
                                                std::vector<std::uint32_t>(g.sigma, 0));
    for (std::size_t i = 0; i < n; ++i) ++ctx[t[i]][t[(i + n - 1) % n]];
    double per_context = 0.0;
    for (const auto& c : ctx) per_context += h0_of_counts(c, tables) + model;

    double per_symbol = double(n) * model;
    return BoosterCosts{whole, per_context, per_symbol};
}

double alternative_partition_cost(const GapInstance& g) {
    if (g.sigma % (g.alpha * g.alpha) != 0)
        throw std::invalid_argument("alpha^2 must divide sigma");
    std::vector<Symbol> l = cyclic_bwt(g.text);
    std::size_t block = g.alpha * g.alpha * g.alpha;
    LogTables tables(l.size());
    double model = std::log2(double(g.sigma));
    double total = 0.0;
    std::vector<std::uint32_t> counts(g.sigma, 0);
    for (std::size_t at = 0; at < l.size(); at += block) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = at; i < at + block; ++i) ++counts[l[i]];
        total += h0_of_counts(counts, tables) + model;
    }
    return total;
}

std::size_t gap_alpha(std::size_t sigma) {
    if (sigma < 4) throw std::invalid_argument("sigma too small");
    double lg = std::log2(double(sigma));
    double denom = std::log2(lg);
    auto rounded = std::llround(std::sqrt(lg / denom));
    std::size_t a = std::max<std::size_t>(2, std::size_t(rounded));
    while (a * a <= sigma && sigma % (a * a) != 0) ++a;
    if (a * a > sigma) throw std::invalid_argument("no feasible alpha for sigma");
    return a;
}

double gap_ratio(std::size_t sigma) {
    GapInstance g = generate_gap_instance(sigma, gap_alpha(sigma));
    BoosterCosts b = booster_partition_costs(g);
    double booster = std::min({b.whole, b.per_context, b.per_symbol});
    return booster / alternative_partition_cost(g);
}

} // namespace optpart
