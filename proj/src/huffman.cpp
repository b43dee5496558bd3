#include "optpart/huffman.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace optpart {

std::vector<std::uint32_t> huffman_code_lengths(const std::vector<std::uint64_t>& freq) {
    std::vector<std::uint32_t> lengths(freq.size(), 0);
    std::vector<std::size_t> present;
    for (std::size_t i = 0; i < freq.size(); ++i)
        if (freq[i] > 0) present.push_back(i);
    if (present.empty()) return lengths;
    if (present.size() == 1) {
        lengths[present[0]] = 1;
        return lengths;
    }

    // Internal tree nodes; leaves are the present symbols. parent links let
    // us read each leaf's depth off the finished tree.
    struct Node {
        std::uint64_t weight;
        std::size_t parent = npos;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * present.size());
    using Entry = std::pair<std::uint64_t, std::size_t>; // (weight, node id)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t s : present) {
        heap.push({freq[s], nodes.size()});
        nodes.push_back({freq[s]});
    }
    while (heap.size() > 1) {
        auto [wa, a] = heap.top();
        heap.pop();
        auto [wb, b] = heap.top();
        heap.pop();
        std::size_t merged = nodes.size();
        nodes.push_back({wa + wb});
        nodes[a].parent = merged;
        nodes[b].parent = merged;
        heap.push({wa + wb, merged});
    }
    for (std::size_t i = 0; i < present.size(); ++i) {
        std::uint32_t depth = 0;
        for (std::size_t v = i; nodes[v].parent != npos; v = nodes[v].parent) ++depth;
        lengths[present[i]] = depth;
    }
    return lengths;
}

std::vector<std::uint64_t> canonical_codes(const std::vector<std::uint32_t>& lengths) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < lengths.size(); ++i)
        if (lengths[i] > 0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lengths[a] != lengths[b] ? lengths[a] < lengths[b] : a < b;
    });
    std::vector<std::uint64_t> codes(lengths.size(), 0);
    std::uint64_t next = 0;
    std::uint32_t prev_len = 0;
    for (std::size_t s : order) {
        if (lengths[s] > 63) throw std::length_error("code length over 63 bits");
        next <<= (lengths[s] - prev_len);
        codes[s] = next++;
        prev_len = lengths[s];
    }
    return codes;
}

double huffman_table_bits(std::size_t present, std::size_t alphabet) {
    double id_bits = std::ceil(std::log2(double(std::max<std::size_t>(alphabet, 2))));
    return double(present) * (id_bits + 5.0);
}

std::vector<double> huffman_validate(const Text& t, const Partition& p) {
    if (p.cuts.empty() || p.cuts.back() != t.size())
        throw std::invalid_argument("malformed partition");
    std::vector<double> out;
    std::size_t begin = 0;
    for (std::size_t end : p.cuts) {
        if (end <= begin || end > t.size()) throw std::invalid_argument("malformed partition");
        std::vector<std::uint64_t> freq(t.sigma(), 0);
        for (std::size_t i = begin; i < end; ++i) ++freq[t[i]];
        auto lengths = huffman_code_lengths(freq);
        double payload = 0.0;
        std::size_t present = 0;
        for (std::size_t c = 0; c < freq.size(); ++c) {
            payload += double(freq[c]) * lengths[c];
            present += freq[c] > 0;
        }
        out.push_back(payload + huffman_table_bits(present, t.sigma()));
        begin = end;
    }
    return out;
}

} // namespace optpart
