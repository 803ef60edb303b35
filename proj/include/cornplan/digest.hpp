#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "cornplan/common.hpp"

namespace cornplan {

/// FNV-1a 64-bit content digest, reported as 16 hex digits.
/// Provenance fingerprint only, not a cryptographic hash.
inline std::string fnv1a64_hex(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("read failure: " + path);
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open file for writing: " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out)
        throw IoError("write failure: " + path);
}

inline std::string digest_file(const std::string& path) {
    return fnv1a64_hex(read_file(path));
}

} // namespace cornplan
