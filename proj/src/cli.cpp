#include "optpart/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "optpart/adversarial.hpp"
#include "optpart/huffman.hpp"
#include "optpart/page_container.hpp"
#include "optpart/partitioner.hpp"

namespace optpart {
namespace {

using nlohmann::json;

int log_level(std::ostream&) {
    const char* v = std::getenv("OPTPART_LOG");
    if (!v) return 0;
    std::string s(v);
    if (s == "debug") return 2;
    if (s == "info") return 1;
    return 0;
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string load_input(const std::string& path, std::size_t cap, bool allow_empty = false) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::runtime_error("cannot read " + path);
    std::string bytes = std::move(buf).str();
    if (bytes.empty() && !allow_empty) throw std::runtime_error("empty input " + path);
    if (bytes.size() > cap)
        throw std::runtime_error(path + " exceeds the " + std::to_string(cap) + " byte cap");
    return bytes;
}

double wall_ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

json estimator_json(const CostModel& m) {
    json j;
    j["family"] = family_name(m.family);
    j["k"] = m.k;
    j["model"] = model_name(m.model);
    j["lambda"] = m.lambda;
    j["header_bits"] = m.header_bits;
    if (m.block_cap)
        j["block_cap"] = *m.block_cap;
    else
        j["block_cap"] = nullptr;
    return j;
}

json segments_json(const Partition& p) {
    json arr = json::array();
    for (std::size_t i = 0; i < p.cuts.size(); ++i) {
        json s;
        s["end"] = p.cuts[i];
        s["entropy_bits"] = p.segments[i].entropy_bits;
        s["model_bits"] = p.segments[i].model_bits;
        s["total_bits"] = p.segments[i].total_bits;
        arr.push_back(std::move(s));
    }
    return arr;
}

json text_partition_report(const RunConfig& cfg, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    std::string bytes = load_input(path, cfg.max_input_bytes);
    Text t = Text::from_bytes(bytes);

    json j;
    j["schema"] = 1;
    j["command"] = cfg.command == Command::exact ? "exact" : "partition";
    j["input"] = {{"path", path}, {"digest", fnv1a_digest(bytes)}, {"n", t.size()},
                  {"sigma", t.sigma()}};
    j["estimator"] = estimator_json(cfg.model);
    j["seed"] = cfg.seed;

    Partition p;
    if (cfg.command == Command::exact) {
        p = exact_partition(t, cfg.model);
    } else {
        ApproxStats stats;
        p = approx_partition(t, cfg.model, cfg.epsilon, &stats);
        j["epsilon"] = cfg.epsilon;
        j["stats"] = {{"edges_relaxed", stats.edges_relaxed},
                      {"buckets", stats.bucket_count},
                      {"cost_bound", stats.cost_bound},
                      {"monotone_clamps", stats.monotone_clamps}};
    }
    verify_partition(t, cfg.model, p);
    j["cuts"] = p.cuts;
    j["segments"] = segments_json(p);
    j["total_bits"] = p.total_bits;
    if (cfg.validate_huffman) j["huffman_actual_bits"] = huffman_validate(t, p);
    j["wall_ms"] = wall_ms_since(start);
    return j;
}

std::vector<std::string> load_pages(const std::string& path, std::size_t cap) {
    namespace fs = std::filesystem;
    std::vector<std::string> pages;
    if (fs::is_directory(path)) {
        std::vector<std::string> names;
        for (const auto& e : fs::directory_iterator(path))
            if (e.is_regular_file()) names.push_back(e.path().string());
        std::sort(names.begin(), names.end());
        std::size_t total = 0;
        for (const auto& name : names) {
            // empty files are legal pages, matching the container format
            pages.push_back(load_input(name, cap, true));
            total += pages.back().size();
            if (total > cap) throw std::runtime_error(path + " exceeds the byte cap");
        }
    } else {
        pages = read_page_container(path);
        std::size_t total = 0;
        for (const auto& p : pages) total += p.size();
        if (total > cap) throw std::runtime_error(path + " exceeds the byte cap");
    }
    if (pages.empty()) throw std::runtime_error("no pages in " + path);
    return pages;
}

json pages_report(const RunConfig& cfg, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    std::vector<std::string> raw = load_pages(path, cfg.max_input_bytes);
    PageCollection pc = PageCollection::from_bytes(raw);
    SuffixStructures ss = build_suffix_structures(pc);

    json j;
    j["schema"] = 1;
    j["command"] = "partition-pages";
    std::string all;
    for (const auto& p : raw) all += p;
    j["input"] = {{"path", path},
                  {"digest", fnv1a_digest(all)},
                  {"pages", pc.page_count()},
                  {"n", all.size()},
                  {"sigma", pc.sigma()}};
    j["coder"] = cfg.page_coder == BwtCoder::entropy ? "entropy" : "huffman";
    j["seed"] = cfg.seed;

    Partition p;
    if (cfg.pages_exact) {
        p = page_exact_partition(pc, ss, cfg.page_coder);
    } else {
        ApproxStats stats;
        p = page_aligned_partition(pc, ss, cfg.epsilon, cfg.page_coder, &stats);
        j["epsilon"] = cfg.epsilon;
        j["stats"] = {{"edges_relaxed", stats.edges_relaxed},
                      {"buckets", stats.bucket_count},
                      {"cost_bound", stats.cost_bound},
                      {"monotone_clamps", stats.monotone_clamps}};
    }
    j["page_cuts"] = p.cuts;
    j["segments"] = segments_json(p);
    j["total_bits"] = p.total_bits;
    j["wall_ms"] = wall_ms_since(start);
    return j;
}

json gap_demo_report(const RunConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    std::size_t alpha = cfg.gap_alpha_override ? *cfg.gap_alpha_override
                                               : gap_alpha(cfg.gap_sigma);
    GapInstance g = generate_gap_instance(cfg.gap_sigma, alpha);
    BoosterCosts b = booster_partition_costs(g);
    double alt = alternative_partition_cost(g);
    json j;
    j["schema"] = 1;
    j["command"] = "gap-demo";
    j["sigma"] = g.sigma;
    j["alpha"] = g.alpha;
    j["n"] = g.text.size();
    j["booster"] = {{"whole", b.whole}, {"per_context", b.per_context},
                    {"per_symbol", b.per_symbol}};
    j["alternative"] = alt;
    j["ratio"] = std::min({b.whole, b.per_context, b.per_symbol}) / alt;
    j["wall_ms"] = wall_ms_since(start);
    return j;
}

json analyze_report(const RunConfig& cfg, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    std::string bytes = load_input(path, cfg.max_input_bytes);
    Text t = Text::from_bytes(bytes);
    LogTables tables(t.size());
    json j;
    j["schema"] = 1;
    j["command"] = "analyze";
    j["input"] = {{"path", path}, {"digest", fnv1a_digest(bytes)}, {"n", t.size()},
                  {"sigma", t.sigma()}};
    j["seed"] = cfg.seed;
    json fams = json::array();
    for (EntropyFamily f : {EntropyFamily::H0, EntropyFamily::H0A, EntropyFamily::HK,
                            EntropyFamily::HKA}) {
        unsigned kmax = (f == EntropyFamily::HK || f == EntropyFamily::HKA) ? 3 : 0;
        for (unsigned k = (kmax > 0 ? 1u : 0u); k <= kmax; ++k) {
            if (t.size() <= k) continue;
            CostModel m = cfg.model;
            m.family = f;
            m.k = k;
            SegmentCost whole = segment_cost(t, 0, t.size(), m, tables);
            json e;
            e["family"] = family_name(f);
            e["k"] = k;
            e["entropy_bits"] = whole.entropy_bits;
            e["bits_per_symbol"] = whole.entropy_bits / double(t.size());
            e["whole_total_bits"] = whole.total_bits;
            fams.push_back(std::move(e));
        }
    }
    j["families"] = fams;
    j["wall_ms"] = wall_ms_since(start);
    return j;
}

// Dotted-path flattening; arrays index numerically. Deterministic because
// nlohmann::json orders object keys.
void flatten_tsv(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_tsv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_tsv(j[i], prefix + "." + std::to_string(i), out);
    } else {
        out << prefix << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void emit(const RunConfig& cfg, const std::vector<json>& reports, std::ostream& fallback) {
    std::ofstream file;
    std::ostream* out = &fallback;
    if (cfg.out_path) {
        file.open(*cfg.out_path, std::ios::trunc);
        if (!file) throw std::runtime_error("cannot write " + *cfg.out_path);
        out = &file;
    }
    if (cfg.format == OutputFormat::json) {
        if (reports.size() == 1)
            *out << reports[0].dump(2) << '\n';
        else
            *out << json(reports).dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i) *out << '\n';
            flatten_tsv(reports[i], "", *out);
        }
    }
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    int level = log_level(err);
    try {
        std::vector<json> reports;
        if (cfg.command == Command::gap_demo) {
            reports.push_back(gap_demo_report(cfg));
        } else {
            if (cfg.inputs.empty()) throw std::runtime_error("no inputs given");
            reports.resize(cfg.inputs.size());
            std::vector<std::string> failures(cfg.inputs.size());
            unsigned jobs = cfg.jobs ? cfg.jobs : std::thread::hardware_concurrency();
            jobs = std::max(1u, std::min<unsigned>(jobs, cfg.inputs.size()));
            std::atomic<std::size_t> next{0};
            std::mutex log_mu;
            auto worker = [&] {
                for (std::size_t i; (i = next.fetch_add(1)) < cfg.inputs.size();) {
                    const std::string& path = cfg.inputs[i];
                    try {
                        if (level >= 1) {
                            std::lock_guard lock(log_mu);
                            err << "[info] processing " << path << '\n';
                        }
                        switch (cfg.command) {
                        case Command::partition:
                        case Command::exact:
                            reports[i] = text_partition_report(cfg, path);
                            break;
                        case Command::partition_pages:
                            reports[i] = pages_report(cfg, path);
                            break;
                        case Command::analyze:
                            reports[i] = analyze_report(cfg, path);
                            break;
                        default:
                            failures[i] = "bad command";
                        }
                    } catch (const std::exception& e) {
                        failures[i] = e.what();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();
            bool failed = false;
            for (std::size_t i = 0; i < failures.size(); ++i) {
                if (failures[i].empty()) continue;
                err << "optpart: " << failures[i] << '\n';
                failed = true;
            }
            if (failed) return 2;
        }
        emit(cfg, reports, out);
        return 0;
    } catch (const std::exception& e) {
        err << "optpart: " << e.what() << '\n';
        return 2;
    }
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"entropy-estimated optimal text partitioning"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string family = "h0", model_kind = "huffman", format, coder = "entropy";
    std::uint64_t cap_opt = 0;

    auto add_format = [&](CLI::App* sub) {
        sub->add_flag_callback("--json", [&] { cfg.format = OutputFormat::json; },
                               "JSON report (default)");
        sub->add_flag_callback("--tsv", [&] { cfg.format = OutputFormat::tsv; },
                               "flattened key\\tvalue report");
        sub->add_option("--out", cfg.out_path, "write the report to a file instead of stdout");
        sub->add_option("--seed", cfg.seed, "seed recorded in the report");
    };
    auto add_estimator = [&](CLI::App* sub) {
        sub->add_option("-e,--estimator", family, "entropy family: h0, h0a, hk, hka")
            ->check(CLI::IsMember({"h0", "h0a", "hk", "hka"}));
        sub->add_option("-k,--context", cfg.model.k, "context order for hk/hka")
            ->check(CLI::Range(0u, 8u));
        sub->add_option("--model", model_kind, "model cost: huffman or arithmetic")
            ->check(CLI::IsMember({"huffman", "arithmetic"}));
        sub->add_option("--lambda", cfg.model.lambda, "entropy weight");
        sub->add_option("--header-bits", cfg.model.header_bits, "per-segment header charge");
        sub->add_option("--block-cap", cap_opt, "max segment length");
        sub->add_option("--max-bytes", cfg.max_input_bytes, "input size cap");
        sub->add_option("--jobs", cfg.jobs, "worker threads across inputs");
        sub->add_flag("--validate", cfg.validate_huffman,
                      "also run a real canonical-Huffman coder per segment");
    };

    CLI::App* partition = app.add_subcommand("partition", "approximate optimal partition");
    partition->add_option("inputs", cfg.inputs, "input files")->required();
    partition->add_option("--epsilon", cfg.epsilon, "approximation slack")
        ->check(CLI::PositiveNumber);
    add_estimator(partition);
    add_format(partition);

    CLI::App* exact = app.add_subcommand("exact", "exact optimal partition (quadratic)");
    exact->add_option("inputs", cfg.inputs, "input files")->required();
    add_estimator(exact);
    add_format(exact);

    CLI::App* pages = app.add_subcommand("partition-pages",
                                         "page-aligned partition of an OPGC container or "
                                         "directory of page files");
    pages->add_option("inputs", cfg.inputs, "containers or directories")->required();
    pages->add_option("--epsilon", cfg.epsilon, "approximation slack")
        ->check(CLI::PositiveNumber);
    pages->add_option("--coder", coder, "entropy or huffman")
        ->check(CLI::IsMember({"entropy", "huffman"}));
    pages->add_flag("--exact", cfg.pages_exact, "run the quadratic page DP instead");
    pages->add_option("--max-bytes", cfg.max_input_bytes, "input size cap");
    pages->add_option("--jobs", cfg.jobs, "worker threads across inputs");
    add_format(pages);

    CLI::App* gap = app.add_subcommand("gap-demo", "booster gap instance measurement");
    gap->add_option("--sigma", cfg.gap_sigma, "alphabet size")->check(CLI::Range(4, 1 << 20));
    gap->add_option("--alpha", cfg.gap_alpha_override, "sub-alphabet width override");
    add_format(gap);

    CLI::App* analyze = app.add_subcommand("analyze", "whole-file entropy summary per family");
    analyze->add_option("inputs", cfg.inputs, "input files")->required();
    analyze->add_option("--max-bytes", cfg.max_input_bytes, "input size cap");
    analyze->add_option("--jobs", cfg.jobs, "worker threads across inputs");
    add_format(analyze);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "optpart: " << e.what() << "\n\n" << app.help() << '\n';
        return 64;
    }

    if (partition->parsed())
        cfg.command = Command::partition;
    else if (exact->parsed())
        cfg.command = Command::exact;
    else if (pages->parsed())
        cfg.command = Command::partition_pages;
    else if (gap->parsed())
        cfg.command = Command::gap_demo;
    else
        cfg.command = Command::analyze;

    cfg.model.family = *family_from_name(family);
    cfg.model.model = model_kind == "huffman" ? ModelCostKind::huffman
                                              : ModelCostKind::arithmetic;
    if (!cfg.model.korder()) cfg.model.k = 0;
    if (cap_opt > 0) cfg.model.block_cap = cap_opt;
    cfg.page_coder = coder == "entropy" ? BwtCoder::entropy : BwtCoder::huffman;

    return run(cfg, std::cout, std::cerr);
}

} // namespace optpart
