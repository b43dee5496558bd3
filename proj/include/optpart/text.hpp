#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace optpart {

using Symbol = std::uint32_t;

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/*
 * A text over a dense integer alphabet. Symbol ids are assigned in order of
 * first occurrence, so sigma() is exactly the number of distinct source
 * tokens and every id below sigma() occurs at least once.
 */
class Text {
public:
    // One symbol per input byte. Throws std::invalid_argument on empty input.
    static Text from_bytes(std::string_view bytes);

    // One symbol per whitespace-separated token.
    static Text from_words(std::string_view input);

    // Takes the ids as given; used for synthetic alphabets and gram texts.
    // Callers must keep ids dense starting at 0.
    static Text from_symbols(std::vector<Symbol> symbols, std::size_t sigma);

    std::size_t size() const { return symbols_.size(); }
    std::size_t sigma() const { return sigma_; }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const { return symbols_; }

    // Source token for a symbol id, when the text was built from bytes or
    // words; empty for synthetic texts.
    const std::vector<std::string>& tokens() const { return tokens_; }

    // Copy of the range [i, j), with ids left untouched.
    Text slice(std::size_t i, std::size_t j) const;

private:
    std::vector<Symbol> symbols_;
    std::vector<std::string> tokens_;
    std::size_t sigma_ = 0;
};

// Text whose i-th symbol is a dense id for the q-gram t[i, i+q). Ids follow
// first occurrence, so equal grams share an id and sigma() counts distinct
// grams. Throws std::invalid_argument if q == 0 or q > t.size().
Text remap_qgrams(const Text& t, std::size_t q);

// prev_occ[i] = largest p < i with t[p] == t[i], or npos.
std::vector<std::size_t> build_last_occurrence(const Text& t);

/*
 * Shared lookup tables for x*log2(x) and log2(x!). Incremental estimators
 * add and subtract table entries, and the from-scratch evaluations use the
 * same entries, so both sides agree to float rounding rather than drifting
 * apart through repeated transcendental calls.
 */
class LogTables {
public:
    explicit LogTables(std::size_t max_n);

    // x * log2(x), with the 0 * log 0 = 0 convention.
    double xlogx(std::size_t x) const {
        assert(x < xlogx_.size());
        return xlogx_[x];
    }

    // log2(x!)
    double logfact(std::size_t x) const {
        assert(x < logfact_.size());
        return logfact_[x];
    }

    std::size_t max_n() const { return xlogx_.size() - 1; }

private:
    std::vector<double> xlogx_;
    std::vector<double> logfact_;
};

} // namespace optpart
