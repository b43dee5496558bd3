#include "optpart/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optpart {

const char* family_name(EntropyFamily f) {
    switch (f) {
    case EntropyFamily::H0: return "h0";
    case EntropyFamily::H0A: return "h0a";
    case EntropyFamily::HK: return "hk";
    case EntropyFamily::HKA: return "hka";
    }
    return "?";
}

const char* model_name(ModelCostKind m) {
    switch (m) {
    case ModelCostKind::huffman: return "huffman";
    case ModelCostKind::arithmetic: return "arithmetic";
    case ModelCostKind::custom: return "custom";
    }
    return "?";
}

std::optional<EntropyFamily> family_from_name(const std::string& s) {
    if (s == "h0") return EntropyFamily::H0;
    if (s == "h0a") return EntropyFamily::H0A;
    if (s == "hk") return EntropyFamily::HK;
    if (s == "hka") return EntropyFamily::HKA;
    return std::nullopt;
}

double h0_bits(std::span<const std::uint32_t> counts, std::size_t n, const LogTables& tables) {
    std::size_t total = 0;
    double e = 0.0;
    for (std::uint32_t c : counts) {
        total += c;
        e += tables.xlogx(c);
    }
    if (total != n)
        throw std::invalid_argument("inconsistent counts");
    return tables.xlogx(n) - e;
}

double h0_adaptive_bits(std::span<const std::uint32_t> counts, std::size_t n,
                        const LogTables& tables) {
    std::size_t total = 0;
    double e = 0.0;
    for (std::uint32_t c : counts) {
        total += c;
        e += tables.logfact(c);
    }
    if (total != n)
        throw std::invalid_argument("inconsistent counts");
    return tables.logfact(n) - e;
}

namespace {

// Entropy of successor groups for t[i, j). Groups are formed by sorting
// (context id, successor) pairs, which keeps the oracle free of the
// incremental machinery it is used to check.
double hk_group_bits(const Text& t, std::size_t i, std::size_t j, unsigned k, bool adaptive,
                     const LogTables& tables) {
    std::size_t len = j - i;
    Text sub = t.slice(i, j);
    Text ctx = remap_qgrams(sub, k); // k-grams; position p covers sub[p, p+k)
    std::vector<std::pair<Symbol, Symbol>> pairs;
    pairs.reserve(len - k);
    for (std::size_t p = 0; p + k < len; ++p)
        pairs.emplace_back(ctx[p], sub[p + k]);
    std::sort(pairs.begin(), pairs.end());

    double bits = 0.0;
    std::size_t run = 0;
    while (run < pairs.size()) {
        std::size_t run_end = run;
        while (run_end < pairs.size() && pairs[run_end].first == pairs[run].first)
            ++run_end;
        // successor histogram for this context; pairs are sorted so equal
        // successors are adjacent
        std::vector<std::uint32_t> counts;
        std::size_t p = run;
        while (p < run_end) {
            std::size_t q = p;
            while (q < run_end && pairs[q].second == pairs[p].second)
                ++q;
            counts.push_back(static_cast<std::uint32_t>(q - p));
            p = q;
        }
        std::size_t group_n = run_end - run;
        bits += adaptive ? h0_adaptive_bits(counts, group_n, tables)
                         : h0_bits(counts, group_n, tables);
        run = run_end;
    }
    return bits;
}

std::size_t distinct_symbols(const Text& t, std::size_t i, std::size_t j) {
    std::vector<bool> seen(t.sigma(), false);
    std::size_t distinct = 0;
    for (std::size_t p = i; p < j; ++p) {
        if (!seen[t[p]]) {
            seen[t[p]] = true;
            ++distinct;
        }
    }
    return distinct;
}

// Distinct q-grams fully contained in t[i, j); 0 when the segment is shorter
// than q.
std::size_t distinct_qgrams(const Text& t, std::size_t i, std::size_t j, std::size_t q) {
    if (j - i < q)
        return 0;
    Text grams = remap_qgrams(t.slice(i, j), q);
    return grams.sigma();
}

} // namespace

double hk_bits(const Text& t, std::size_t i, std::size_t j, unsigned k, bool adaptive,
               const LogTables& tables) {
    if (i >= j || j > t.size())
        throw std::invalid_argument("bad segment range");
    if (j - i <= k)
        throw std::invalid_argument("segment too short for order k");
    if (k == 0) {
        std::vector<std::uint32_t> counts(t.sigma(), 0);
        for (std::size_t p = i; p < j; ++p)
            ++counts[t[p]];
        return adaptive ? h0_adaptive_bits(counts, j - i, tables)
                        : h0_bits(counts, j - i, tables);
    }
    return hk_group_bits(t, i, j, k, adaptive, tables);
}

double model_bits(std::size_t n, std::size_t sigma_seg, const CostModel& model) {
    if (model.adaptive())
        return 0.0;
    switch (model.model) {
    case ModelCostKind::huffman: {
        double s = static_cast<double>(sigma_seg);
        double slogs = sigma_seg > 1 ? s * std::log2(s) : 0.0;
        return slogs + static_cast<double>(n);
    }
    case ModelCostKind::arithmetic: {
        double logn = n > 1 ? std::log2(static_cast<double>(n)) : 0.0;
        return static_cast<double>(sigma_seg) * logn + logn / static_cast<double>(n);
    }
    case ModelCostKind::custom:
        if (!model.custom_model)
            throw std::invalid_argument("custom model cost not set");
        return model.custom_model(n, sigma_seg);
    }
    throw std::invalid_argument("unknown model cost");
}

SegmentCost segment_cost(const Text& t, std::size_t i, std::size_t j, const CostModel& model,
                         const LogTables& tables) {
    if (i >= j || j > t.size())
        throw std::invalid_argument("bad segment range");
    std::size_t n = j - i;
    if (model.block_cap && n > *model.block_cap)
        throw std::invalid_argument("segment exceeds block cap");

    SegmentCost cost;
    switch (model.family) {
    case EntropyFamily::H0:
    case EntropyFamily::H0A:
        cost.entropy_bits = hk_bits(t, i, j, 0, model.adaptive(), tables);
        cost.model_bits = model_bits(n, distinct_symbols(t, i, j), model);
        break;
    case EntropyFamily::HK:
    case EntropyFamily::HKA:
        // Segments of length <= k hold no full context, so their entropy
        // term is zero; the model term still charges them.
        cost.entropy_bits =
            n > model.k ? hk_bits(t, i, j, model.k, model.adaptive(), tables) : 0.0;
        cost.model_bits = model_bits(n, distinct_qgrams(t, i, j, model.k + 1), model);
        break;
    }
    cost.total_bits = model.lambda * cost.entropy_bits + cost.model_bits + model.header_bits;
    return cost;
}

SegmentCost segment_cost(const Text& t, std::size_t i, std::size_t j, const CostModel& model) {
    LogTables tables(t.size());
    return segment_cost(t, i, j, model, tables);
}

} // namespace optpart
