#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cornplan/common.hpp"
#include "cornplan/csv.hpp"
#include "cornplan/mds.hpp"
#include "cornplan/rng.hpp"

namespace cornplan::rap {

enum class Dimension { Ecological, Economic, Social };

inline const char* to_string(Dimension d) {
    switch (d) {
        case Dimension::Ecological: return "ecological";
        case Dimension::Economic: return "economic";
        default: return "social";
    }
}

inline Dimension parse_dimension(std::string_view s) {
    std::string l = text::lower(s);
    if (l == "ecological") return Dimension::Ecological;
    if (l == "economic") return Dimension::Economic;
    if (l == "social") return Dimension::Social;
    throw ConfigError("unknown dimension '" + std::string(s) +
                      "', expected ecological|economic|social");
}

enum class GoodDirection { High, Low };

struct AttributeSpec {
    std::string name;
    int scale_min = 0;
    int scale_max = 0;
    GoodDirection good_direction = GoodDirection::High;
};

struct AttributeSchema {
    Dimension dimension = Dimension::Ecological;
    std::vector<AttributeSpec> attributes;

    void validate() const {
        if (attributes.empty())
            throw ConfigError("attribute schema: needs at least one attribute");
        std::set<std::string> names;
        for (const auto& a : attributes) {
            if (a.name.empty()) throw ConfigError("attribute schema: empty attribute name");
            if (!names.insert(a.name).second)
                throw ConfigError("attribute schema: duplicate attribute '" + a.name + "'");
            if (a.scale_min >= a.scale_max)
                throw ConfigError("attribute '" + a.name +
                                  "': scale_min must be below scale_max");
        }
    }
};

inline constexpr const char* kGoodId = "GOOD";
inline constexpr const char* kBadId = "BAD";
inline constexpr const char* kMidLowId = "MID_LOW";
inline constexpr const char* kMidHighId = "MID_HIGH";

inline bool is_reserved_id(std::string_view id) {
    return id == kGoodId || id == kBadId || id == kMidLowId || id == kMidHighId;
}

struct ScoreRow {
    std::string id;
    std::vector<int> scores;
    bool synthetic = false;
};

struct ScoreMatrix {
    AttributeSchema schema;
    std::vector<ScoreRow> rows;

    size_t real_count() const {
        size_t n = 0;
        for (const auto& r : rows)
            if (!r.synthetic) ++n;
        return n;
    }

    bool anchored() const {
        for (const auto& r : rows)
            if (r.synthetic) return true;
        return false;
    }

    void validate() const {
        schema.validate();
        std::set<std::string> ids;
        size_t good = 0, bad = 0;
        for (const auto& row : rows) {
            if (!ids.insert(row.id).second)
                throw ConfigError("score matrix: duplicate object id '" + row.id + "'");
            if (!row.synthetic && is_reserved_id(row.id))
                throw ConfigError("score matrix: object id '" + row.id + "' is reserved");
            if (row.scores.size() != schema.attributes.size())
                throw ConfigError("score matrix: object '" + row.id + "' has " +
                                  std::to_string(row.scores.size()) + " scores, expected " +
                                  std::to_string(schema.attributes.size()));
            for (size_t a = 0; a < row.scores.size(); ++a) {
                const auto& spec = schema.attributes[a];
                if (row.scores[a] < spec.scale_min || row.scores[a] > spec.scale_max)
                    throw ConfigError("score matrix: object '" + row.id + "', attribute '" +
                                      spec.name + "': score " + std::to_string(row.scores[a]) +
                                      " outside scale [" + std::to_string(spec.scale_min) +
                                      ", " + std::to_string(spec.scale_max) + "]");
            }
            if (row.id == kGoodId) ++good;
            if (row.id == kBadId) ++bad;
        }
        if (anchored() && (good != 1 || bad != 1))
            throw ConfigError("score matrix: anchored matrix must have exactly one GOOD "
                              "and one BAD row");
    }
};

/// Appends the RAPFISH-style reference rows: GOOD (best score on every
/// attribute), BAD (worst), and the two scale-midpoint anchors MID_LOW /
/// MID_HIGH (floor and ceiling of the midpoint).
inline ScoreMatrix add_reference_rows(const ScoreMatrix& matrix) {
    matrix.validate();
    if (matrix.anchored())
        throw ConfigError("add_reference_rows: matrix already carries reference rows");
    if (matrix.real_count() == 0)
        throw ConfigError("add_reference_rows: matrix has no real objects");

    ScoreMatrix out = matrix;
    ScoreRow good{kGoodId, {}, true}, bad{kBadId, {}, true};
    ScoreRow mid_low{kMidLowId, {}, true}, mid_high{kMidHighId, {}, true};
    for (const auto& a : out.schema.attributes) {
        bool high = a.good_direction == GoodDirection::High;
        good.scores.push_back(high ? a.scale_max : a.scale_min);
        bad.scores.push_back(high ? a.scale_min : a.scale_max);
        double mid = (a.scale_min + a.scale_max) / 2.0;
        mid_low.scores.push_back(static_cast<int>(std::floor(mid)));
        mid_high.scores.push_back(static_cast<int>(std::ceil(mid)));
    }
    out.rows.push_back(std::move(good));
    out.rows.push_back(std::move(bad));
    out.rows.push_back(std::move(mid_low));
    out.rows.push_back(std::move(mid_high));
    out.validate();
    return out;
}

/// Maps every attribute affinely onto [0,1] with 1 at the good end
/// (low-direction attributes are flipped).
inline std::vector<std::vector<double>> normalize_scores(const ScoreMatrix& matrix) {
    matrix.validate();
    if (!matrix.anchored())
        throw ConfigError("normalize_scores: reference rows must be added first");
    std::vector<std::vector<double>> out;
    out.reserve(matrix.rows.size());
    for (const auto& row : matrix.rows) {
        std::vector<double> norm(row.scores.size());
        for (size_t a = 0; a < row.scores.size(); ++a) {
            const auto& spec = matrix.schema.attributes[a];
            double t = static_cast<double>(row.scores[a] - spec.scale_min) /
                       static_cast<double>(spec.scale_max - spec.scale_min);
            norm[a] = spec.good_direction == GoodDirection::High ? t : 1.0 - t;
        }
        out.push_back(std::move(norm));
    }
    return out;
}

/// Euclidean distances between normalized score rows.
inline mds::SquareMatrix distance_matrix(const std::vector<std::vector<double>>& rows) {
    mds::SquareMatrix d(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = i + 1; j < rows.size(); ++j) {
            if (rows[i].size() != rows[j].size())
                throw ConfigError("distance_matrix: ragged rows");
            double s = 0.0;
            for (size_t a = 0; a < rows[i].size(); ++a) {
                double diff = rows[i][a] - rows[j][a];
                s += diff * diff;
            }
            double dist = std::sqrt(s);
            d.at(i, j) = dist;
            d.at(j, i) = dist;
        }
    }
    return d;
}

struct OrdinationParams {
    int max_iter = 500;
    double tol = 1e-8;
    std::uint64_t seed = 0;
};

/// Aligned 2-D ordination of an anchored score matrix. Indices are the
/// x-coordinates on the BAD=(0,0) .. GOOD=(100,0) axis, unclamped.
struct OrdinationResult {
    std::vector<std::string> row_ids; // real objects first, then the anchors
    std::vector<bool> synthetic;
    std::vector<mds::Point> coords;
    double stress1 = 0.0;
    double rsq = 1.0;
    std::map<std::string, double> index; // real objects only, percent
    std::vector<std::string> out_of_range_ids;
    bool out_of_range = false;
    std::vector<double> stress_history;
    int iterations = 0;
    bool converged = false;
};

inline constexpr double kIndexRangeSlack = 1e-9;

/// Full RAP pipeline: anchor, normalize, distance, SMACOF, axis alignment.
inline OrdinationResult sustainability_index(const ScoreMatrix& matrix,
                                             const OrdinationParams& params = {}) {
    ScoreMatrix anchored = add_reference_rows(matrix);
    auto normalized = normalize_scores(anchored);
    mds::SquareMatrix dists = distance_matrix(normalized);

    mds::SmacofParams sp;
    sp.max_iter = params.max_iter;
    sp.tol = params.tol;
    sp.seed = params.seed;
    mds::SmacofResult fit = mds::smacof_mds(dists, sp);

    const size_t nreal = matrix.rows.size();
    auto aligned = mds::align_to_axis(fit.coords, nreal /*GOOD*/, nreal + 1 /*BAD*/);

    OrdinationResult res;
    res.coords = std::move(aligned);
    res.stress1 = fit.stress1;
    res.rsq = fit.rsq;
    res.stress_history = std::move(fit.stress_history);
    res.iterations = fit.iterations;
    res.converged = fit.converged;
    for (const auto& row : anchored.rows) {
        res.row_ids.push_back(row.id);
        res.synthetic.push_back(row.synthetic);
    }
    for (size_t i = 0; i < nreal; ++i) {
        double idx = res.coords[i].x;
        res.index.emplace(anchored.rows[i].id, idx);
        if (idx < -kIndexRangeSlack || idx > 100.0 + kIndexRangeSlack)
            res.out_of_range_ids.push_back(anchored.rows[i].id);
    }
    res.out_of_range = !res.out_of_range_ids.empty();
    return res;
}

enum class SustainabilityCategory {
    NotSustainable,
    LessSustainable,
    QuiteSustainable,
    VerySustainable
};

inline const char* to_string(SustainabilityCategory c) {
    switch (c) {
        case SustainabilityCategory::NotSustainable: return "Not Sustainable";
        case SustainabilityCategory::LessSustainable: return "Less Sustainable";
        case SustainabilityCategory::QuiteSustainable: return "Quite Sustainable";
        default: return "Very Sustainable";
    }
}

/// Index categories with closed upper bounds: (.., 25.00] Not, (25.00, 50.00]
/// Less, (50.00, 75.00] Quite, above Very.
inline SustainabilityCategory categorize(double index) {
    if (index <= 25.0) return SustainabilityCategory::NotSustainable;
    if (index <= 50.0) return SustainabilityCategory::LessSustainable;
    if (index <= 75.0) return SustainabilityCategory::QuiteSustainable;
    return SustainabilityCategory::VerySustainable;
}

struct LeverageReport {
    std::vector<std::pair<std::string, double>> rms; // attribute order
};

/// Attribute sensitivity: RMS change of the real-object indices when the
/// attribute is left out. Every rerun uses the same seed so differences
/// reflect the removal only.
inline LeverageReport leverage(const ScoreMatrix& matrix, const OrdinationParams& params = {}) {
    matrix.validate();
    if (matrix.anchored())
        throw ConfigError("leverage: expects a matrix without reference rows");
    if (matrix.schema.attributes.size() < 2)
        throw ConfigError("leverage: needs at least 2 attributes");

    OrdinationResult full = sustainability_index(matrix, params);

    LeverageReport report;
    const size_t m = matrix.schema.attributes.size();
    for (size_t drop = 0; drop < m; ++drop) {
        ScoreMatrix reduced;
        reduced.schema.dimension = matrix.schema.dimension;
        for (size_t a = 0; a < m; ++a)
            if (a != drop) reduced.schema.attributes.push_back(matrix.schema.attributes[a]);
        for (const auto& row : matrix.rows) {
            ScoreRow r{row.id, {}, false};
            for (size_t a = 0; a < m; ++a)
                if (a != drop) r.scores.push_back(row.scores[a]);
            reduced.rows.push_back(std::move(r));
        }
        OrdinationResult part = sustainability_index(reduced, params);

        double sq = 0.0;
        for (const auto& row : matrix.rows) {
            double diff = full.index.at(row.id) - part.index.at(row.id);
            sq += diff * diff;
        }
        double rms = std::sqrt(sq / static_cast<double>(matrix.rows.size()));
        report.rms.emplace_back(matrix.schema.attributes[drop].name, rms);
    }
    return report;
}

struct MonteCarloObjectStats {
    double mean = 0.0;
    double stddev = 0.0;
    double p2_5 = 0.0;
    double p97_5 = 0.0;
};

struct MonteCarloReport {
    std::uint64_t seed = 0;
    int trials = 0;
    double flip_prob = 0.0;
    std::vector<std::pair<std::string, MonteCarloObjectStats>> objects; // input order
};

namespace detail {

inline double percentile(const std::vector<double>& sorted, double q) {
    if (sorted.size() == 1) return sorted[0];
    double rank = q * static_cast<double>(sorted.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(rank));
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace detail

/// Score-perturbation robustness: per trial every real score independently
/// moves one scale step up or down with probability flip_prob (clamped to
/// the scale), and the ordination is recomputed. Trial t draws from the
/// stream (seed, t), so results do not depend on execution order.
inline MonteCarloReport monte_carlo(const ScoreMatrix& matrix, int trials, double flip_prob,
                                    std::uint64_t seed, const OrdinationParams& params = {}) {
    matrix.validate();
    if (matrix.anchored())
        throw ConfigError("monte_carlo: expects a matrix without reference rows");
    if (trials < 1) throw ConfigError("monte_carlo: trials must be >= 1");
    if (!(flip_prob >= 0.0 && flip_prob <= 1.0))
        throw ConfigError("monte_carlo: flip_prob must be in [0,1]");

    std::map<std::string, std::vector<double>> samples;
    for (const auto& row : matrix.rows) samples.emplace(row.id, std::vector<double>{});

    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(t));
        ScoreMatrix perturbed = matrix;
        for (auto& row : perturbed.rows) {
            for (size_t a = 0; a < row.scores.size(); ++a) {
                if (rng.next_double() < flip_prob) {
                    int step = rng.next_double() < 0.5 ? -1 : 1;
                    const auto& spec = matrix.schema.attributes[a];
                    row.scores[a] = std::clamp(row.scores[a] + step, spec.scale_min,
                                               spec.scale_max);
                }
            }
        }
        OrdinationParams tp = params;
        tp.seed = rng.next_u64();
        OrdinationResult r = sustainability_index(perturbed, tp);
        for (const auto& [id, idx] : r.index) samples[id].push_back(idx);
    }

    MonteCarloReport report;
    report.seed = seed;
    report.trials = trials;
    report.flip_prob = flip_prob;
    for (const auto& row : matrix.rows) {
        auto& xs = samples[row.id];
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        double stddev = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
        std::sort(xs.begin(), xs.end());
        MonteCarloObjectStats st;
        st.mean = mean;
        st.stddev = stddev;
        st.p2_5 = detail::percentile(xs, 0.025);
        st.p97_5 = detail::percentile(xs, 0.975);
        report.objects.emplace_back(row.id, st);
    }
    return report;
}

/// Schema JSON: {"dimension": "...", "attributes": [{"name", "scale_min",
/// "scale_max", "good_direction"}...]}
inline AttributeSchema parse_schema_json(std::string_view content,
                                         const std::string& context = "rap schema") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(context + ": invalid JSON: " + e.what());
    }
    AttributeSchema schema;
    try {
        schema.dimension = parse_dimension(doc.at("dimension").get<std::string>());
        for (const auto& a : doc.at("attributes")) {
            AttributeSpec spec;
            spec.name = a.at("name").get<std::string>();
            spec.scale_min = a.at("scale_min").get<int>();
            spec.scale_max = a.at("scale_max").get<int>();
            std::string dir = text::lower(a.at("good_direction").get<std::string>());
            if (dir == "high") spec.good_direction = GoodDirection::High;
            else if (dir == "low") spec.good_direction = GoodDirection::Low;
            else throw ConfigError(context + ": attribute '" + spec.name +
                                   "': good_direction must be high|low");
            schema.attributes.push_back(std::move(spec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(context + ": " + e.what());
    }
    schema.validate();
    return schema;
}

/// Score CSV: header `id,<attribute...>` matched by name against the schema
/// (any column order), one row per real object, integer scores.
inline ScoreMatrix parse_scores_csv(std::string_view content, const AttributeSchema& schema,
                                    const std::string& context = "rap scores") {
    schema.validate();
    auto rows = csv::parse(content, context);
    if (rows.empty()) throw ConfigError(context + ": empty file");
    const auto& header = rows[0];
    if (header.size() < 2 || text::lower(header[0]) != "id")
        throw ConfigError(context + ": first header column must be 'id'");

    std::vector<size_t> col_of_attr(schema.attributes.size(), 0);
    std::vector<bool> found(schema.attributes.size(), false);
    for (size_t c = 1; c < header.size(); ++c) {
        bool matched = false;
        for (size_t a = 0; a < schema.attributes.size(); ++a) {
            if (schema.attributes[a].name == header[c]) {
                if (found[a])
                    throw ConfigError(context + ": duplicate column '" + header[c] + "'");
                col_of_attr[a] = c;
                found[a] = true;
                matched = true;
                break;
            }
        }
        if (!matched)
            throw ConfigError(context + ": column '" + header[c] + "' not in schema");
    }
    for (size_t a = 0; a < schema.attributes.size(); ++a)
        if (!found[a])
            throw ConfigError(context + ": missing column for attribute '" +
                              schema.attributes[a].name + "'");

    ScoreMatrix matrix;
    matrix.schema = schema;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw ConfigError(context + ": row " + std::to_string(r + 1) + " has " +
                              std::to_string(row.size()) + " fields, expected " +
                              std::to_string(header.size()));
        ScoreRow sr;
        sr.id = row[0];
        for (size_t a = 0; a < schema.attributes.size(); ++a) {
            long long v = text::parse_int(row[col_of_attr[a]],
                                          context + ": row " + std::to_string(r + 1));
            sr.scores.push_back(static_cast<int>(v));
        }
        matrix.rows.push_back(std::move(sr));
    }
    matrix.validate();
    if (matrix.rows.empty()) throw ConfigError(context + ": no object rows");
    return matrix;
}

} // namespace cornplan::rap
