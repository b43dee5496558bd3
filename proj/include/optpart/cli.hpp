#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "optpart/bwt_partition.hpp"
#include "optpart/cost_model.hpp"

namespace optpart {

enum class Command { partition, partition_pages, exact, gap_demo, analyze };
enum class OutputFormat { json, tsv };

struct RunConfig {
    Command command = Command::partition;
    CostModel model;
    double epsilon = 0.1;
    std::vector<std::string> inputs;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> out_path;
    std::uint64_t seed = 1;

    // gap-demo
    std::size_t gap_sigma = 256;
    std::optional<std::size_t> gap_alpha_override;

    // partition-pages
    BwtCoder page_coder = BwtCoder::entropy;
    bool pages_exact = false;

    bool validate_huffman = false;
    std::size_t max_input_bytes = 64ull << 20;
    unsigned jobs = 0; // 0 picks hardware concurrency
};

// Executes cfg, writing the report to out (or cfg.out_path) and diagnostics
// to err. Returns 0 on success, 2 when an input cannot be read, is empty,
// exceeds the size cap, or fails during processing.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// argv front end: returns run()'s code, or 64 on invalid usage.
int cli_main(int argc, const char* const* argv);

} // namespace optpart
