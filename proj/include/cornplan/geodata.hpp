#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cornplan/common.hpp"
#include "cornplan/csv.hpp"

namespace cornplan::geodata {

/// Six-value ESRI ASCII grid header. Rows are stored north-first, row-major.
struct GridHeader {
    int ncols = 0;
    int nrows = 0;
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 1.0;
    double nodata_value = -9999.0;

    void validate(const std::string& context) const {
        if (ncols < 1) throw ConfigError(context + ": ncols must be >= 1");
        if (nrows < 1) throw ConfigError(context + ": nrows must be >= 1");
        if (!(cellsize > 0.0)) throw ConfigError(context + ": cellsize must be > 0");
    }

    size_t cell_count() const { return static_cast<size_t>(ncols) * static_cast<size_t>(nrows); }
};

struct NumericRaster {
    GridHeader header;
    std::vector<double> cells; // row-major, north row first

    bool is_nodata(size_t i) const { return cells[i] == header.nodata_value; }

    void validate(const std::string& context) const {
        header.validate(context);
        if (cells.size() != header.cell_count())
            throw ConfigError(context + ": cell count " + std::to_string(cells.size()) +
                              " does not match ncols*nrows = " +
                              std::to_string(header.cell_count()));
    }
};

/// Mapping between integer class codes and class labels. Codes and labels
/// must both be unique so that lookups invert cleanly.
struct Legend {
    std::map<int, std::string> entries;

    const std::string& label(int code) const {
        auto it = entries.find(code);
        if (it == entries.end())
            throw ConfigError("legend: code " + std::to_string(code) + " has no label");
        return it->second;
    }

    void validate() const {
        if (entries.empty()) throw ConfigError("legend: must be non-empty");
        std::map<std::string, int> seen;
        for (const auto& [code, label] : entries) {
            auto [it, inserted] = seen.emplace(label, code);
            if (!inserted)
                throw ConfigError("legend: duplicate label '" + label + "' for codes " +
                                  std::to_string(it->second) + " and " + std::to_string(code));
        }
    }
};

struct CategoricalRaster {
    GridHeader header;
    std::vector<int> codes; // row-major, north row first
    Legend legend;

    int nodata_code() const { return static_cast<int>(header.nodata_value); }
    bool is_nodata(size_t i) const { return codes[i] == nodata_code(); }

    void validate(const std::string& context) const {
        header.validate(context);
        if (codes.size() != header.cell_count())
            throw ConfigError(context + ": cell count " + std::to_string(codes.size()) +
                              " does not match ncols*nrows = " +
                              std::to_string(header.cell_count()));
        legend.validate();
        for (size_t i = 0; i < codes.size(); ++i) {
            if (is_nodata(i)) continue;
            if (!legend.entries.count(codes[i]))
                throw ConfigError(context + ": code " + std::to_string(codes[i]) +
                                  " at cell " + std::to_string(i) + " missing from legend");
        }
    }
};

namespace detail {

struct TokenizedGrid {
    GridHeader header;
    std::vector<double> values;
};

inline TokenizedGrid parse_grid_text(std::string_view content, const std::string& context) {
    static const char* kKeys[6] = {"ncols", "nrows", "xllcorner",
                                   "yllcorner", "cellsize", "nodata_value"};
    TokenizedGrid out;
    double header_vals[6] = {0, 0, 0, 0, 0, 0};

    size_t pos = 0;
    int line_no = 0;
    int header_seen = 0;
    while (pos <= content.size()) {
        size_t nl = content.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos)
                                    ? content.substr(pos)
                                    : content.substr(pos, nl - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::string_view trimmed = text::trim(line);

        if (!trimmed.empty()) {
            // split on whitespace
            std::vector<std::string_view> tokens;
            size_t t = 0;
            while (t < trimmed.size()) {
                while (t < trimmed.size() && (trimmed[t] == ' ' || trimmed[t] == '\t')) ++t;
                size_t start = t;
                while (t < trimmed.size() && trimmed[t] != ' ' && trimmed[t] != '\t') ++t;
                if (t > start) tokens.push_back(trimmed.substr(start, t - start));
            }

            if (header_seen < 6) {
                if (tokens.size() != 2)
                    throw ConfigError(context + ": line " + std::to_string(line_no) +
                                      ": expected header '" + kKeys[header_seen] +
                                      " <value>'");
                if (text::lower(tokens[0]) != kKeys[header_seen])
                    throw ConfigError(context + ": line " + std::to_string(line_no) +
                                      ": malformed header key '" + std::string(tokens[0]) +
                                      "', expected '" + kKeys[header_seen] + "'");
                header_vals[header_seen] =
                    text::parse_double(tokens[1], context + ": line " + std::to_string(line_no));
                ++header_seen;
            } else {
                for (std::string_view tok : tokens)
                    out.values.push_back(text::parse_double(
                        tok, context + ": line " + std::to_string(line_no)));
            }
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }

    if (header_seen < 6)
        throw ConfigError(context + ": truncated header, got " + std::to_string(header_seen) +
                          " of 6 header lines");

    double nc = header_vals[0], nr = header_vals[1];
    if (nc != std::floor(nc) || nc < 1 || nc > 1e9)
        throw ConfigError(context + ": line 1: ncols must be a positive integer");
    if (nr != std::floor(nr) || nr < 1 || nr > 1e9)
        throw ConfigError(context + ": line 2: nrows must be a positive integer");

    out.header.ncols = static_cast<int>(nc);
    out.header.nrows = static_cast<int>(nr);
    out.header.xllcorner = header_vals[2];
    out.header.yllcorner = header_vals[3];
    out.header.cellsize = header_vals[4];
    out.header.nodata_value = header_vals[5];
    out.header.validate(context);

    if (out.values.size() != out.header.cell_count())
        throw ConfigError(context + ": cell count mismatch: header declares " +
                          std::to_string(out.header.cell_count()) + " cells, found " +
                          std::to_string(out.values.size()));
    return out;
}

} // namespace detail

/// Parses an ESRI ASCII grid (six header lines, then north-first rows).
/// Decimal-point numbers only; errors carry 1-based line numbers.
inline NumericRaster parse_ascii_grid(std::string_view content,
                                      const std::string& context = "ascii grid") {
    auto grid = detail::parse_grid_text(content, context);
    NumericRaster raster{grid.header, std::move(grid.values)};
    raster.validate(context);
    return raster;
}

/// Serializes a raster as ESRI ASCII grid text. Data cells are written with
/// a fixed number of decimals; nodata cells and header values are written
/// shortest-round-trip so they re-parse to the exact same double.
inline std::string serialize_ascii_grid(const NumericRaster& raster, int decimals = 6) {
    if (decimals < 0 || decimals > 15)
        throw ConfigError("serialize_ascii_grid: decimals must be in 0..15");
    raster.validate("serialize_ascii_grid");

    const GridHeader& h = raster.header;
    std::string out;
    out.reserve(raster.cells.size() * (static_cast<size_t>(decimals) + 4) + 128);
    out += "ncols " + std::to_string(h.ncols) + "\n";
    out += "nrows " + std::to_string(h.nrows) + "\n";
    out += "xllcorner " + text::format_double(h.xllcorner) + "\n";
    out += "yllcorner " + text::format_double(h.yllcorner) + "\n";
    out += "cellsize " + text::format_double(h.cellsize) + "\n";
    const std::string nodata_token = text::format_double(h.nodata_value);
    out += "NODATA_value " + nodata_token + "\n";

    for (int r = 0; r < h.nrows; ++r) {
        for (int c = 0; c < h.ncols; ++c) {
            size_t i = static_cast<size_t>(r) * h.ncols + c;
            if (c > 0) out += ' ';
            out += raster.is_nodata(i) ? nodata_token
                                       : text::format_fixed(raster.cells[i], decimals);
        }
        out += '\n';
    }
    return out;
}

/// Parses an ASCII grid holding integer class codes.
inline CategoricalRaster parse_categorical_grid(std::string_view content, Legend legend,
                                                const std::string& context = "class grid") {
    auto grid = detail::parse_grid_text(content, context);
    CategoricalRaster raster;
    raster.header = grid.header;
    raster.legend = std::move(legend);
    raster.codes.reserve(grid.values.size());
    for (size_t i = 0; i < grid.values.size(); ++i) {
        double v = grid.values[i];
        if (v != std::floor(v) || std::abs(v) > 2e9)
            throw ConfigError(context + ": cell " + std::to_string(i) +
                              ": class code must be an integer, got " + text::format_double(v));
        raster.codes.push_back(static_cast<int>(v));
    }
    raster.validate(context);
    return raster;
}

inline std::string serialize_categorical_grid(const CategoricalRaster& raster) {
    raster.validate("serialize_categorical_grid");
    const GridHeader& h = raster.header;
    std::string out;
    out += "ncols " + std::to_string(h.ncols) + "\n";
    out += "nrows " + std::to_string(h.nrows) + "\n";
    out += "xllcorner " + text::format_double(h.xllcorner) + "\n";
    out += "yllcorner " + text::format_double(h.yllcorner) + "\n";
    out += "cellsize " + text::format_double(h.cellsize) + "\n";
    out += "NODATA_value " + std::to_string(raster.nodata_code()) + "\n";
    for (int r = 0; r < h.nrows; ++r) {
        for (int c = 0; c < h.ncols; ++c) {
            if (c > 0) out += ' ';
            out += std::to_string(raster.codes[static_cast<size_t>(r) * h.ncols + c]);
        }
        out += '\n';
    }
    return out;
}

/// Replaces every class code by the score of its label. Nodata passes through.
inline NumericRaster apply_legend_scores(const CategoricalRaster& raster,
                                         const std::map<std::string, double>& scores) {
    raster.validate("apply_legend_scores");
    for (const auto& [code, label] : raster.legend.entries) {
        if (!scores.count(label))
            throw ConfigError("apply_legend_scores: no score for label '" + label + "'");
    }
    NumericRaster out;
    out.header = raster.header;
    out.cells.resize(raster.codes.size());
    for (size_t i = 0; i < raster.codes.size(); ++i) {
        out.cells[i] = raster.is_nodata(i)
                           ? raster.header.nodata_value
                           : scores.at(raster.legend.label(raster.codes[i]));
    }
    return out;
}

inline constexpr double kAlignTolerance = 1e-9; // map units

/// Verifies that all headers describe the same grid: identical dimensions,
/// corners and cellsize within kAlignTolerance. Throws naming the first
/// differing field.
inline void assert_aligned(const std::vector<GridHeader>& headers) {
    if (headers.empty())
        throw ConfigError("assert_aligned: empty header list");
    const GridHeader& ref = headers.front();
    for (size_t i = 1; i < headers.size(); ++i) {
        const GridHeader& h = headers[i];
        if (h.ncols != ref.ncols)
            throw ConfigError("raster alignment: ncols differs (grid 0 has " +
                              std::to_string(ref.ncols) + ", grid " + std::to_string(i) +
                              " has " + std::to_string(h.ncols) + ")");
        if (h.nrows != ref.nrows)
            throw ConfigError("raster alignment: nrows differs (grid 0 has " +
                              std::to_string(ref.nrows) + ", grid " + std::to_string(i) +
                              " has " + std::to_string(h.nrows) + ")");
        if (std::abs(h.cellsize - ref.cellsize) > kAlignTolerance)
            throw ConfigError("raster alignment: cellsize differs between grid 0 and grid " +
                              std::to_string(i));
        if (std::abs(h.xllcorner - ref.xllcorner) > kAlignTolerance)
            throw ConfigError("raster alignment: xllcorner differs between grid 0 and grid " +
                              std::to_string(i));
        if (std::abs(h.yllcorner - ref.yllcorner) > kAlignTolerance)
            throw ConfigError("raster alignment: yllcorner differs between grid 0 and grid " +
                              std::to_string(i));
    }
}

/// Loads a legend from CSV with header `code,label`.
inline Legend parse_legend_csv(std::string_view content, const std::string& context = "legend") {
    auto rows = csv::parse(content, context);
    if (rows.empty() || rows[0].size() < 2 || text::lower(rows[0][0]) != "code" ||
        text::lower(rows[0][1]) != "label")
        throw ConfigError(context + ": expected CSV header 'code,label'");
    Legend legend;
    for (size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2)
            throw ConfigError(context + ": row " + std::to_string(r + 1) +
                              ": expected 2 fields");
        int code = static_cast<int>(text::parse_int(rows[r][0], context));
        auto [it, inserted] = legend.entries.emplace(code, rows[r][1]);
        (void)it;
        if (!inserted)
            throw ConfigError(context + ": duplicate code " + std::to_string(code));
    }
    legend.validate();
    return legend;
}

/// Loads a score map from CSV with header `label,score`.
inline std::map<std::string, double> parse_scores_csv(std::string_view content,
                                                      const std::string& context = "scores") {
    auto rows = csv::parse(content, context);
    if (rows.empty() || rows[0].size() < 2 || text::lower(rows[0][0]) != "label" ||
        text::lower(rows[0][1]) != "score")
        throw ConfigError(context + ": expected CSV header 'label,score'");
    std::map<std::string, double> scores;
    for (size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2)
            throw ConfigError(context + ": row " + std::to_string(r + 1) +
                              ": expected 2 fields");
        auto [it, inserted] = scores.emplace(rows[r][0], text::parse_double(rows[r][1], context));
        (void)it;
        if (!inserted)
            throw ConfigError(context + ": duplicate label '" + rows[r][0] + "'");
    }
    return scores;
}

} // namespace cornplan::geodata
