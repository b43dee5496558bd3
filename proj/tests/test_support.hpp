#pragma once

// Shared helpers for the test binaries: deterministic random inputs and a
// relative-tolerance comparison used everywhere costs are checked.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "optpart/text.hpp"

namespace testsup {

inline std::string random_bytes(std::mt19937_64& rng, std::size_t n, std::size_t sigma) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(sigma) - 1);
    std::string s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        s.push_back(static_cast<char>('a' + pick(rng)));
    return s;
}

inline optpart::Text random_text(std::mt19937_64& rng, std::size_t n, std::size_t sigma) {
    return optpart::Text::from_bytes(random_bytes(rng, n, sigma));
}

// Runs of random symbols, so partitions have something to find.
inline optpart::Text random_runs_text(std::mt19937_64& rng, std::size_t n, std::size_t sigma) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(sigma) - 1);
    std::uniform_int_distribution<std::size_t> run_len(1, 12);
    std::string s;
    while (s.size() < n) {
        char c = static_cast<char>('a' + pick(rng));
        s.append(std::min(run_len(rng), n - s.size()), c);
    }
    return optpart::Text::from_bytes(s);
}

inline bool close_rel(double a, double b, double tol = 1e-6) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

} // namespace testsup
