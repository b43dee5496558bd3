#include "optpart/page_container.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace optpart {
namespace {

constexpr char kMagic[4] = {'O', 'P', 'G', 'C'};

std::uint64_t read_u64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("truncated container");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

void write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) {
        b[i] = static_cast<unsigned char>(v & 0xff);
        v >>= 8;
    }
    out.write(reinterpret_cast<const char*>(b), 8);
}

} // namespace

std::vector<std::string> read_page_container(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[4];
    if (!in.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kMagic, 4))
        throw std::runtime_error("not an OPGC container: " + path);
    std::uint64_t count = read_u64(in);
    if (count > (1u << 24)) throw std::runtime_error("implausible page count");
    std::vector<std::string> pages;
    pages.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t len = read_u64(in);
        std::string page(len, '\0');
        if (len > 0 && !in.read(page.data(), std::streamsize(len)))
            throw std::runtime_error("truncated container");
        pages.push_back(std::move(page));
    }
    return pages;
}

void write_page_container(const std::string& path, const std::vector<std::string>& pages) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(kMagic, 4);
    write_u64(out, pages.size());
    for (const auto& page : pages) {
        write_u64(out, page.size());
        out.write(page.data(), std::streamsize(page.size()));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace optpart
