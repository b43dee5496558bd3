#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "optpart/cost_model.hpp"
#include "optpart/huffman.hpp"
#include "optpart/partitioner.hpp"
#include "test_support.hpp"

using namespace optpart;

namespace {

double payload_bits(const std::vector<std::uint64_t>& freq) {
    std::vector<std::uint32_t> len = huffman_code_lengths(freq);
    double total = 0.0;
    for (std::size_t s = 0; s < freq.size(); ++s)
        total += double(freq[s]) * len[s];
    return total;
}

double kraft_sum(const std::vector<std::uint32_t>& lengths) {
    double k = 0.0;
    for (std::uint32_t l : lengths)
        if (l)
            k += std::ldexp(1.0, -int(l));
    return k;
}

} // namespace

TEST_CASE("code lengths on fixed frequency sets") {
    // two equal symbols get depth-1 codes: 8 payload bits for n = 8
    std::vector<std::uint64_t> pair{4, 4};
    std::vector<std::uint32_t> want{1, 1};
    CHECK(huffman_code_lengths(pair) == want);
    CHECK(payload_bits(pair) == doctest::Approx(8.0));

    // a lone symbol still pays one bit per occurrence
    std::vector<std::uint64_t> lone{0, 9, 0};
    std::vector<std::uint32_t> lone_want{0, 1, 0};
    CHECK(huffman_code_lengths(lone) == lone_want);

    // classic skewed set: 1,1,2,4 gives depths 3,3,2,1
    std::vector<std::uint64_t> skew{1, 1, 2, 4};
    std::vector<std::uint32_t> skew_want{3, 3, 2, 1};
    CHECK(huffman_code_lengths(skew) == skew_want);

    CHECK(huffman_code_lengths({}).empty());
    std::vector<std::uint64_t> none{0, 0};
    std::vector<std::uint32_t> zeros{0, 0};
    CHECK(huffman_code_lengths(none) == zeros);
}

TEST_CASE("code lengths satisfy kraft with equality") {
    std::mt19937_64 rng(271);
    for (int round = 0; round < 60; ++round) {
        std::size_t sigma = 2 + rng() % 30;
        std::vector<std::uint64_t> freq(sigma, 0);
        std::size_t present = 0;
        for (auto& f : freq)
            if (rng() % 3)
                f = 1 + rng() % 500, ++present;
        std::vector<std::uint32_t> len = huffman_code_lengths(freq);
        for (std::size_t s = 0; s < sigma; ++s)
            REQUIRE((len[s] > 0) == (freq[s] > 0));
        if (present >= 2)
            REQUIRE(kraft_sum(len) == doctest::Approx(1.0).epsilon(1e-12));
        else if (present == 1)
            REQUIRE(kraft_sum(len) == doctest::Approx(0.5));
    }
}

TEST_CASE("payload is optimal and within one bit of entropy per symbol") {
    LogTables tables(4096);
    std::mt19937_64 rng(277);
    for (int round = 0; round < 60; ++round) {
        std::size_t sigma = 2 + rng() % 14;
        std::vector<std::uint64_t> freq(sigma, 0);
        std::uint64_t n = 0;
        for (auto& f : freq) {
            f = rng() % 40;
            n += f;
        }
        if (n == 0) {
            freq[0] = n = 1;
        }
        std::vector<std::uint32_t> counts(freq.begin(), freq.end());
        double h = h0_bits(counts, n, tables);
        double pay = payload_bits(freq);
        REQUIRE(pay >= h - 1e-6);
        std::size_t present = 0;
        for (auto f : freq)
            present += f > 0;
        if (present >= 2)
            REQUIRE(pay < h + double(n) + 1e-6);
    }
}

TEST_CASE("payload beats every exhaustively enumerated prefix code") {
    std::mt19937_64 rng(281);
    for (int round = 0; round < 20; ++round) {
        std::vector<std::uint64_t> freq(4);
        for (auto& f : freq)
            f = 1 + rng() % 9;
        double best = 1e18;
        std::uint32_t l[4];
        for (l[0] = 1; l[0] <= 7; ++l[0])
            for (l[1] = 1; l[1] <= 7; ++l[1])
                for (l[2] = 1; l[2] <= 7; ++l[2])
                    for (l[3] = 1; l[3] <= 7; ++l[3]) {
                        double kraft = 0.0, total = 0.0;
                        for (int s = 0; s < 4; ++s) {
                            kraft += std::ldexp(1.0, -int(l[s]));
                            total += double(freq[s]) * l[s];
                        }
                        if (kraft <= 1.0 + 1e-12)
                            best = std::min(best, total);
                    }
        REQUIRE(payload_bits(freq) == doctest::Approx(best));
    }
}

TEST_CASE("canonical codes are prefix free") {
    std::mt19937_64 rng(283);
    for (int round = 0; round < 40; ++round) {
        std::size_t sigma = 1 + rng() % 20;
        std::vector<std::uint64_t> freq(sigma, 0);
        for (auto& f : freq)
            f = rng() % 60;
        bool any = false;
        for (auto f : freq)
            any = any || f > 0;
        if (!any)
            freq[rng() % sigma] = 1;
        std::vector<std::uint32_t> len = huffman_code_lengths(freq);
        std::vector<std::uint64_t> code = canonical_codes(len);
        for (std::size_t a = 0; a < sigma; ++a) {
            if (!len[a])
                continue;
            for (std::size_t b = 0; b < sigma; ++b) {
                if (a == b || !len[b] || len[a] > len[b])
                    continue;
                // code a must not prefix code b
                std::uint64_t hi = code[b] >> (len[b] - len[a]);
                REQUIRE((len[a] == len[b] && a != b ? code[a] != code[b] : hi != code[a]));
            }
        }
    }
}

TEST_CASE("canonical codes reject over-long lengths") {
    std::vector<std::uint32_t> bad{64};
    CHECK_THROWS_AS(canonical_codes(bad), std::length_error);
}

TEST_CASE("table bits formula") {
    CHECK(huffman_table_bits(4, 4) == doctest::Approx(4 * (2 + 5)));
    CHECK(huffman_table_bits(2, 256) == doctest::Approx(2 * (8 + 5)));
    CHECK(huffman_table_bits(1, 1) == doctest::Approx(6)); // id field never collapses to 0 bits
    CHECK(huffman_table_bits(0, 8) == 0.0);
}

TEST_CASE("validator prices segments like a real coder") {
    Text t = Text::from_bytes("aaaabbbb");
    Partition whole;
    whole.cuts = {8};
    std::vector<double> bits = huffman_validate(t, whole);
    REQUIRE(bits.size() == 1);
    CHECK(bits[0] == doctest::Approx(8.0 + 2 * (1 + 5)));

    Partition halves;
    halves.cuts = {4, 8};
    bits = huffman_validate(t, halves);
    REQUIRE(bits.size() == 2);
    CHECK(bits[0] == doctest::Approx(4.0 + 1 * (1 + 5)));
    CHECK(bits[1] == doctest::Approx(4.0 + 1 * (1 + 5)));

    Partition broken;
    broken.cuts = {3, 2, 8};
    CHECK_THROWS_WITH_AS(huffman_validate(t, broken), "malformed partition",
                         std::invalid_argument);
    Partition hollow;
    CHECK_THROWS_AS(huffman_validate(t, hollow), std::invalid_argument);
}

TEST_CASE("actual bits stay under the estimate plus redundancy slack") {
    std::mt19937_64 rng(293);
    for (int round = 0; round < 30; ++round) {
        Text t = testsup::random_runs_text(rng, 20 + rng() % 181, 2 + rng() % 15);
        CostModel m;
        Partition p = exact_partition(t, m);
        std::vector<double> actual = huffman_validate(t, p);
        REQUIRE(actual.size() == p.cuts.size());
        std::size_t begin = 0;
        for (std::size_t i = 0; i < p.cuts.size(); ++i) {
            double est = p.segments[i].total_bits;
            double n = double(p.cuts[i] - begin);
            REQUIRE(actual[i] <= est + n + 64.0);
            begin = p.cuts[i];
        }
    }
}
