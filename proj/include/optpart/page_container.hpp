#pragma once

#include <string>
#include <vector>

namespace optpart {

// "OPGC" page container: 4 magic bytes, u64 page count, then one u64 byte
// length followed by the raw bytes per page. All integers little-endian.
// read throws std::runtime_error on I/O failure or a malformed file.
std::vector<std::string> read_page_container(const std::string& path);
void write_page_container(const std::string& path, const std::vector<std::string>& pages);

} // namespace optpart
