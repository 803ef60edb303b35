#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cornplan/common.hpp"

namespace cornplan::csv {

/// Parses one CSV record. Fields may be double-quoted; "" inside a quoted
/// field is an escaped quote. No embedded newlines.
inline std::vector<std::string> parse_line(std::string_view line, int line_no,
                                           const std::string& context) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    size_t i = 0;
    bool in_field_quotes = false;
    while (i < line.size()) {
        char c = line[i];
        if (in_field_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    i += 2;
                    continue;
                }
                in_field_quotes = false;
                ++i;
                continue;
            }
            cur += c;
            ++i;
            continue;
        }
        if (c == '"' && cur.empty() && !quoted) {
            in_field_quotes = true;
            quoted = true;
            ++i;
            continue;
        }
        if (c == ',') {
            fields.push_back(quoted ? cur : std::string(text::trim(cur)));
            cur.clear();
            quoted = false;
            ++i;
            continue;
        }
        cur += c;
        ++i;
    }
    if (in_field_quotes)
        throw ConfigError(context + ": line " + std::to_string(line_no) +
                          ": unterminated quoted field");
    fields.push_back(quoted ? cur : std::string(text::trim(cur)));
    return fields;
}

/// Splits text into CSV records, skipping blank lines.
inline std::vector<std::vector<std::string>> parse(std::string_view content,
                                                   const std::string& context) {
    std::vector<std::vector<std::string>> rows;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= content.size()) {
        size_t nl = content.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos)
                                    ? content.substr(pos)
                                    : content.substr(pos, nl - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!text::trim(line).empty())
            rows.push_back(parse_line(line, line_no, context));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return rows;
}

inline std::string escape_field(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string write_line(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += escape_field(fields[i]);
    }
    out += '\n';
    return out;
}

} // namespace cornplan::csv
