#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cornplan/common.hpp"
#include "cornplan/geodata.hpp"

namespace cornplan::classify {

/// Natural-breaks result. `breaks` holds the k-1 interior boundaries, each
/// the largest value of its class; membership is right-closed (v <= break
/// falls in the lower class).
struct BreaksResult {
    int k = 1;
    std::vector<double> breaks;
    double sdam = 0.0; // sum of squared deviations from the array mean
    double sdcm = 0.0; // sum of squared deviations from class means
    double gvf = 0.0;  // 1 - sdcm/sdam, defined 1 when sdam == 0
};

namespace detail {

struct Grouped {
    std::vector<double> values; // distinct, ascending
    std::vector<double> counts;
};

inline Grouped group_sorted(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    Grouped g;
    for (double v : values) {
        if (!g.values.empty() && g.values.back() == v) {
            g.counts.back() += 1.0;
        } else {
            g.values.push_back(v);
            g.counts.push_back(1.0);
        }
    }
    return g;
}

/// Weighted sum of squared deviations from the class mean over distinct
/// values [first, last], two-pass. A single distinct value is exactly 0.
inline double class_sse(const Grouped& g, size_t first, size_t last) {
    if (first == last) return 0.0;
    double sum = 0.0, count = 0.0;
    for (size_t t = first; t <= last; ++t) {
        sum += g.counts[t] * g.values[t];
        count += g.counts[t];
    }
    double mean = sum / count;
    double sse = 0.0;
    for (size_t t = first; t <= last; ++t) {
        double d = g.values[t] - mean;
        sse += g.counts[t] * d * d;
    }
    return sse;
}

} // namespace detail

/// Exact optimal natural-breaks classification: minimizes SDCM over all
/// contiguous partitions of the sorted values into k classes (dynamic
/// program over distinct values). Ties resolve to the lexicographically
/// smallest break sequence.
inline BreaksResult jenks_breaks(const std::vector<double>& values, int k) {
    for (double v : values)
        if (std::isnan(v)) throw ConfigError("jenks_breaks: NaN in input values");
    if (values.empty()) throw ConfigError("jenks_breaks: empty input");
    if (k < 1) throw ConfigError("jenks_breaks: k must be >= 1");

    detail::Grouped g = detail::group_sorted(values);
    const size_t m = g.values.size();
    if (static_cast<size_t>(k) > m)
        throw ConfigError("jenks_breaks: k = " + std::to_string(k) + " exceeds " +
                          std::to_string(m) + " distinct values");

    // Prefix sums over values centered at the global mean keep the O(1)
    // interval cost well conditioned. Selection only; reported SDCM is
    // recomputed definitionally below.
    double total_count = 0.0, total_sum = 0.0;
    for (size_t t = 0; t < m; ++t) {
        total_count += g.counts[t];
        total_sum += g.counts[t] * g.values[t];
    }
    const double center = total_sum / total_count;
    std::vector<double> ps(m + 1, 0.0), pq(m + 1, 0.0), pn(m + 1, 0.0);
    for (size_t t = 0; t < m; ++t) {
        double v = g.values[t] - center;
        ps[t + 1] = ps[t] + g.counts[t] * v;
        pq[t + 1] = pq[t] + g.counts[t] * v * v;
        pn[t + 1] = pn[t] + g.counts[t];
    }
    auto interval_cost = [&](size_t i, size_t j) { // distinct indices i..j inclusive
        if (i == j) return 0.0;
        double s = ps[j + 1] - ps[i];
        double q = pq[j + 1] - pq[i];
        double n = pn[j + 1] - pn[i];
        return q - s * s / n;
    };

    // Suffix DP: best[t][i] = minimal cost of splitting distinct values
    // i..m-1 into t classes; choice[t][i] = last index of the first class,
    // smallest among optima so reconstruction is lexicographically minimal.
    const size_t kk = static_cast<size_t>(k);
    std::vector<std::vector<double>> best(kk + 1, std::vector<double>(m + 1, 0.0));
    std::vector<std::vector<size_t>> choice(kk + 1, std::vector<size_t>(m + 1, 0));
    for (size_t i = 0; i < m; ++i) {
        best[1][i] = interval_cost(i, m - 1);
        choice[1][i] = m - 1;
    }
    for (size_t t = 2; t <= kk; ++t) {
        // classes are non-empty: first class may end at j with enough
        // distinct values left for t-1 more classes
        for (size_t i = 0; i + t <= m; ++i) {
            double bestCost = std::numeric_limits<double>::infinity();
            size_t bestJ = i;
            for (size_t j = i; j + (t - 1) <= m - 1; ++j) {
                double c = interval_cost(i, j) + best[t - 1][j + 1];
                if (c < bestCost) {
                    bestCost = c;
                    bestJ = j;
                }
            }
            best[t][i] = bestCost;
            choice[t][i] = bestJ;
        }
    }

    BreaksResult out;
    out.k = k;
    std::vector<std::pair<size_t, size_t>> classes; // distinct index ranges
    size_t i = 0;
    for (size_t t = kk; t >= 1; --t) {
        size_t j = choice[t][i];
        classes.emplace_back(i, j);
        if (t > 1) out.breaks.push_back(g.values[j]);
        i = j + 1;
        if (t == 1) break;
    }

    double mean = total_sum / total_count;
    for (size_t t = 0; t < m; ++t) {
        double d = g.values[t] - mean;
        out.sdam += g.counts[t] * d * d;
    }
    for (const auto& [first, last] : classes)
        out.sdcm += detail::class_sse(g, first, last);
    out.gvf = out.sdam == 0.0 ? 1.0 : 1.0 - out.sdcm / out.sdam;
    return out;
}

/// Goodness of Variance Fit for an arbitrary ascending break set applied
/// right-closed to the values. 1 when the values have zero variance.
inline double gvf(const std::vector<double>& values, const std::vector<double>& breaks) {
    if (values.empty()) throw ConfigError("gvf: empty input");
    for (size_t b = 1; b < breaks.size(); ++b)
        if (!(breaks[b] > breaks[b - 1]))
            throw ConfigError("gvf: breaks must be strictly ascending");

    detail::Grouped g = detail::group_sorted(values);
    double total_count = 0.0, total_sum = 0.0;
    for (size_t t = 0; t < g.values.size(); ++t) {
        total_count += g.counts[t];
        total_sum += g.counts[t] * g.values[t];
    }
    double mean = total_sum / total_count;
    double sdam = 0.0;
    for (size_t t = 0; t < g.values.size(); ++t) {
        double d = g.values[t] - mean;
        sdam += g.counts[t] * d * d;
    }
    if (sdam == 0.0) return 1.0;

    double sdcm = 0.0;
    size_t first = 0;
    for (size_t b = 0; b <= breaks.size(); ++b) {
        size_t last = first;
        bool any = false;
        for (size_t t = first; t < g.values.size(); ++t) {
            if (b < breaks.size() && g.values[t] > breaks[b]) break;
            last = t;
            any = true;
        }
        if (any) {
            sdcm += detail::class_sse(g, first, last);
            first = last + 1;
        }
        if (first >= g.values.size()) break;
    }
    return 1.0 - sdcm / sdam;
}

/// "First Priority", "Second Priority", ...
inline std::string priority_label(int priority) {
    static const char* kOrdinals[] = {"First", "Second", "Third",   "Fourth", "Fifth",
                                      "Sixth", "Seventh", "Eighth", "Ninth",  "Tenth"};
    if (priority >= 1 && priority <= 10)
        return std::string(kOrdinals[priority - 1]) + " Priority";
    return "Priority " + std::to_string(priority);
}

/// Assigns descending priorities: values above the top break are Priority 1,
/// membership right-closed (v <= break falls in the lower-priority class).
/// Nodata cells pass through.
inline geodata::CategoricalRaster classify_raster(const geodata::NumericRaster& raster,
                                                  const BreaksResult& breaks) {
    raster.validate("classify_raster");
    geodata::CategoricalRaster out;
    out.header = raster.header;
    int nodata = out.nodata_code();
    if (nodata >= 1 && nodata <= breaks.k)
        throw ConfigError("classify_raster: nodata code " + std::to_string(nodata) +
                          " collides with a priority code");
    for (int p = 1; p <= breaks.k; ++p)
        out.legend.entries.emplace(p, priority_label(p));

    out.codes.resize(raster.cells.size());
    for (size_t i = 0; i < raster.cells.size(); ++i) {
        if (raster.is_nodata(i)) {
            out.codes[i] = nodata;
            continue;
        }
        double v = raster.cells[i];
        int below = 0; // breaks strictly less than v
        for (double b : breaks.breaks)
            if (b < v) ++below;
        out.codes[i] = breaks.k - below;
    }
    out.validate("classify_raster");
    return out;
}

} // namespace cornplan::classify
