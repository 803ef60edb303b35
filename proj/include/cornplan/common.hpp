#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cornplan {

inline constexpr const char* kToolName = "cornplan";
inline constexpr const char* kToolVersion = "0.1.0";

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or input data (CLI exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem / stream failure (CLI exit code 2).
class IoError : public Error {
public:
    using Error::Error;
};

/// Numeric or consistency failure: degenerate ordination, non-convergence,
/// consistency-ratio violation under --strict (CLI exit code 3).
class NumericError : public Error {
public:
    using Error::Error;
};

namespace text {

/// Locale-independent double parse of a whole token. Returns false if the
/// token is not a valid number or has trailing characters.
inline bool try_parse_double(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

inline double parse_double(std::string_view token, const std::string& context) {
    double v = 0.0;
    if (!try_parse_double(token, v))
        throw ConfigError(context + ": unparseable number '" + std::string(token) + "'");
    return v;
}

inline bool try_parse_int(std::string_view token, long long& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

inline long long parse_int(std::string_view token, const std::string& context) {
    long long v = 0;
    if (!try_parse_int(token, v))
        throw ConfigError(context + ": unparseable integer '" + std::string(token) + "'");
    return v;
}

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

/// Fixed-point formatting with the given number of decimals, locale-independent.
inline std::string format_fixed(double v, int decimals) {
    char buf[512];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

inline std::string_view trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

} // namespace text
} // namespace cornplan
