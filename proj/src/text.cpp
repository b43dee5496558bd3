#include "optpart/text.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace optpart {

Text Text::from_bytes(std::string_view bytes) {
    if (bytes.empty())
        throw std::invalid_argument("empty text");
    Text t;
    t.symbols_.reserve(bytes.size());
    std::unordered_map<char, Symbol> ids;
    for (char ch : bytes) {
        auto [it, inserted] = ids.emplace(ch, static_cast<Symbol>(t.tokens_.size()));
        if (inserted)
            t.tokens_.push_back(std::string(1, ch));
        t.symbols_.push_back(it->second);
    }
    t.sigma_ = t.tokens_.size();
    return t;
}

Text Text::from_words(std::string_view input) {
    Text t;
    std::unordered_map<std::string, Symbol> ids;
    std::size_t i = 0;
    while (i < input.size()) {
        while (i < input.size() && std::isspace(static_cast<unsigned char>(input[i])))
            ++i;
        std::size_t start = i;
        while (i < input.size() && !std::isspace(static_cast<unsigned char>(input[i])))
            ++i;
        if (i == start)
            break;
        std::string word(input.substr(start, i - start));
        auto [it, inserted] = ids.emplace(std::move(word), static_cast<Symbol>(t.tokens_.size()));
        if (inserted)
            t.tokens_.push_back(std::string(input.substr(start, i - start)));
        t.symbols_.push_back(it->second);
    }
    if (t.symbols_.empty())
        throw std::invalid_argument("empty text");
    t.sigma_ = t.tokens_.size();
    return t;
}

Text Text::from_symbols(std::vector<Symbol> symbols, std::size_t sigma) {
    if (symbols.empty())
        throw std::invalid_argument("empty text");
    for (Symbol s : symbols) {
        if (s >= sigma)
            throw std::invalid_argument("symbol id out of range");
    }
    Text t;
    t.symbols_ = std::move(symbols);
    t.sigma_ = sigma;
    return t;
}

Text Text::slice(std::size_t i, std::size_t j) const {
    if (i >= j || j > size())
        throw std::invalid_argument("bad slice range");
    Text t;
    t.symbols_.assign(symbols_.begin() + i, symbols_.begin() + j);
    t.sigma_ = sigma_;
    t.tokens_ = tokens_;
    return t;
}

namespace {

// Hashes a gram slice so equal grams collide; ids are handed out in scan
// order which makes them first-occurrence dense.
struct GramKey {
    const Symbol* data;
    std::size_t len;
    bool operator==(const GramKey& o) const {
        if (len != o.len)
            return false;
        for (std::size_t i = 0; i < len; ++i)
            if (data[i] != o.data[i])
                return false;
        return true;
    }
};

struct GramKeyHash {
    std::size_t operator()(const GramKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t i = 0; i < k.len; ++i) {
            h ^= k.data[i];
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

Text remap_qgrams(const Text& t, std::size_t q) {
    if (q == 0)
        throw std::invalid_argument("q must be positive");
    if (q > t.size())
        throw std::invalid_argument("q-gram longer than text");
    std::size_t count = t.size() - q + 1;
    std::vector<Symbol> out;
    out.reserve(count);
    std::unordered_map<GramKey, Symbol, GramKeyHash> ids;
    ids.reserve(count * 2);
    const Symbol* base = t.symbols().data();
    Symbol next = 0;
    for (std::size_t i = 0; i < count; ++i) {
        auto [it, inserted] = ids.emplace(GramKey{base + i, q}, next);
        if (inserted)
            ++next;
        out.push_back(it->second);
    }
    return Text::from_symbols(std::move(out), next);
}

std::vector<std::size_t> build_last_occurrence(const Text& t) {
    std::vector<std::size_t> prev(t.size(), npos);
    std::vector<std::size_t> last(t.sigma(), npos);
    for (std::size_t i = 0; i < t.size(); ++i) {
        prev[i] = last[t[i]];
        last[t[i]] = i;
    }
    return prev;
}

LogTables::LogTables(std::size_t max_n) {
    xlogx_.resize(max_n + 1);
    logfact_.resize(max_n + 1);
    xlogx_[0] = 0.0;
    logfact_[0] = 0.0;
    for (std::size_t x = 1; x <= max_n; ++x) {
        double lg = std::log2(static_cast<double>(x));
        xlogx_[x] = static_cast<double>(x) * lg;
        logfact_[x] = logfact_[x - 1] + lg;
    }
}

} // namespace optpart
