#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "optpart/text.hpp"

namespace optpart {

// Entropy families. The adaptive variants charge what an adaptive
// (learn-as-you-go) coder pays and therefore carry no model bits.
enum class EntropyFamily { H0, H0A, HK, HKA };

// Shape of the per-segment model cost f(n, sigma'). For the k-order families
// sigma' is the number of distinct (k+1)-grams in the segment.
enum class ModelCostKind { huffman, arithmetic, custom };

struct CostModel {
    EntropyFamily family = EntropyFamily::H0;
    unsigned k = 0; // context order, used by HK / HKA
    ModelCostKind model = ModelCostKind::huffman;
    std::function<double(std::size_t, std::size_t)> custom_model; // (n, sigma')
    double lambda = 1.0;
    double header_bits = 32.0;
    std::optional<std::size_t> block_cap; // max segment length, if any

    bool adaptive() const { return family == EntropyFamily::H0A || family == EntropyFamily::HKA; }
    bool korder() const { return family == EntropyFamily::HK || family == EntropyFamily::HKA; }
};

struct SegmentCost {
    double entropy_bits = 0.0;
    double model_bits = 0.0;
    double total_bits = 0.0; // lambda * entropy + model + header
};

const char* family_name(EntropyFamily f);
const char* model_name(ModelCostKind m);
std::optional<EntropyFamily> family_from_name(const std::string& s);

// n * H0 of the count vector, computed as n log n - sum c log c.
// Throws std::invalid_argument if the counts do not sum to n.
double h0_bits(std::span<const std::uint32_t> counts, std::size_t n, const LogTables& tables);

// Adaptive-coder analogue: log2(n!) - sum log2(c!).
double h0_adaptive_bits(std::span<const std::uint32_t> counts, std::size_t n,
                        const LogTables& tables);

// k-th order entropy bits of t[i, j): successor symbols are grouped by their
// k-symbol left context, counting only contexts whose successor lies inside
// the segment, and each group is charged h0_bits (or the adaptive form).
// Throws std::invalid_argument when j - i <= k ("segment too short for
// order k"); the segment-level dispatcher treats those segments as zero
// entropy instead, since a partitioner has to be able to price them.
double hk_bits(const Text& t, std::size_t i, std::size_t j, unsigned k, bool adaptive,
               const LogTables& tables);

// Model bits for a segment of length n with sigma_seg distinct symbols
// (distinct (k+1)-grams for the k-order families). Adaptive families pay 0.
double model_bits(std::size_t n, std::size_t sigma_seg, const CostModel& model);

// Full from-scratch cost of t[i, j) under the model. This is the reference
// evaluation the incremental estimators are checked against.
SegmentCost segment_cost(const Text& t, std::size_t i, std::size_t j, const CostModel& model,
                         const LogTables& tables);

// Convenience overload that builds its own tables.
SegmentCost segment_cost(const Text& t, std::size_t i, std::size_t j, const CostModel& model);

} // namespace optpart
