#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cornplan/common.hpp"
#include "cornplan/csv.hpp"

namespace cornplan::ahp {

inline constexpr double kReciprocityTolerance = 1e-9;
inline constexpr double kSaatyScaleMin = 1.0 / 9.0;
inline constexpr double kSaatyScaleMax = 9.0;
inline constexpr double kConsistencyThreshold = 0.1;
inline constexpr double kWeightSumTolerance = 0.02;

/// Reciprocal pairwise comparison matrix, row-major.
struct PairwiseMatrix {
    size_t n = 0;
    std::vector<double> entries;

    PairwiseMatrix() = default;
    PairwiseMatrix(size_t size, std::vector<double> values)
        : n(size), entries(std::move(values)) {}

    double at(size_t i, size_t j) const { return entries[i * n + j]; }
    double& at(size_t i, size_t j) { return entries[i * n + j]; }
};

/// Hard-validates reciprocity and positivity; returns warnings for entries
/// outside the Saaty 1/9..9 scale.
inline std::vector<std::string> validate_matrix(const PairwiseMatrix& m) {
    if (m.n < 2) throw ConfigError("pairwise matrix: order must be >= 2");
    if (m.entries.size() != m.n * m.n)
        throw ConfigError("pairwise matrix: storage does not match order");
    std::vector<std::string> warnings;
    for (size_t i = 0; i < m.n; ++i) {
        for (size_t j = 0; j < m.n; ++j) {
            double v = m.at(i, j);
            if (!(v > 0.0) || std::isnan(v) || std::isinf(v))
                throw ConfigError("pairwise matrix: non-positive entry at (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            if (i == j && v != 1.0)
                throw ConfigError("pairwise matrix: diagonal entry at (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  ") must be 1");
            if (i < j && std::abs(v * m.at(j, i) - 1.0) > kReciprocityTolerance)
                throw ConfigError("pairwise matrix: entries (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ") and (" + std::to_string(j + 1) +
                                  "," + std::to_string(i + 1) + ") are not reciprocal");
            if (v < kSaatyScaleMin - 1e-12 || v > kSaatyScaleMax + 1e-12)
                warnings.push_back("entry (" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ") = " + text::format_double(v) +
                                   " outside the Saaty scale [1/9, 9]");
        }
    }
    return warnings;
}

/// Principal-eigenvector priorities by power iteration from the uniform
/// vector; iterates are normalized to sum 1 and convergence is measured in
/// the max norm.
inline std::vector<double> principal_weights(const PairwiseMatrix& m, double tol = 1e-12,
                                             int max_iter = 10000) {
    validate_matrix(m);
    std::vector<double> w(m.n, 1.0 / static_cast<double>(m.n));
    std::vector<double> next(m.n, 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        double sum = 0.0;
        for (size_t i = 0; i < m.n; ++i) {
            double s = 0.0;
            for (size_t j = 0; j < m.n; ++j) s += m.at(i, j) * w[j];
            next[i] = s;
            sum += s;
        }
        double diff = 0.0;
        for (size_t i = 0; i < m.n; ++i) {
            next[i] /= sum;
            diff = std::max(diff, std::abs(next[i] - w[i]));
        }
        w.swap(next);
        if (diff < tol) return w;
    }
    throw NumericError("principal_weights: power iteration did not converge in " +
                       std::to_string(max_iter) + " iterations");
}

/// Saaty random consistency index; defined up to n = 10.
inline double random_index(size_t n) {
    static const double kRI[] = {0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
    if (n < 1 || n > 10)
        throw ConfigError("random index undefined for n = " + std::to_string(n) +
                          "; supply an explicit RI");
    return kRI[n];
}

struct ConsistencyReport {
    double lambda_max = 0.0;
    double ci = 0.0;
    double ri = 0.0;
    double cr = 0.0;
    bool consistent = true; // CR <= 0.1
};

/// lambda_max is the mean of (M w)_i / w_i; CR = CI/RI with CR defined 0
/// for n <= 2. Pass explicit_ri for orders beyond the Saaty table.
inline ConsistencyReport consistency(const PairwiseMatrix& m, const std::vector<double>& w,
                                     double explicit_ri = -1.0) {
    validate_matrix(m);
    if (w.size() != m.n) throw ConfigError("consistency: weight vector length mismatch");
    double lambda = 0.0;
    for (size_t i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (size_t j = 0; j < m.n; ++j) s += m.at(i, j) * w[j];
        if (!(w[i] > 0.0)) throw ConfigError("consistency: weights must be positive");
        lambda += s / w[i];
    }
    lambda /= static_cast<double>(m.n);

    ConsistencyReport rep;
    rep.lambda_max = lambda;
    double nd = static_cast<double>(m.n);
    rep.ci = (lambda - nd) / (nd - 1.0);
    rep.ri = explicit_ri >= 0.0 ? explicit_ri : random_index(m.n);
    rep.cr = (m.n <= 2 || rep.ri == 0.0) ? 0.0 : rep.ci / rep.ri;
    rep.consistent = rep.cr <= kConsistencyThreshold;
    return rep;
}

/// Row geometric mean priorities; exact for consistent matrices, kept as a
/// cross-check on the eigenvector method.
inline std::vector<double> geometric_mean_weights(const PairwiseMatrix& m) {
    validate_matrix(m);
    std::vector<double> w(m.n);
    double sum = 0.0;
    for (size_t i = 0; i < m.n; ++i) {
        double lg = 0.0;
        for (size_t j = 0; j < m.n; ++j) lg += std::log(m.at(i, j));
        w[i] = std::exp(lg / static_cast<double>(m.n));
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return w;
}

struct HierarchyClass {
    std::string label;
    double value = 0.0;
};

struct Subcriterion {
    std::string name;
    double score = 0.0;
    std::vector<HierarchyClass> classes;
};

struct Aspect {
    std::string name;
    double weight = 0.0;
    std::vector<Subcriterion> subcriteria;
};

/// Goal -> aspect -> subcriterion -> class tree with priorities. Weight sums
/// are checked within kWeightSumTolerance, wide enough for published rounded
/// weights.
struct Hierarchy {
    std::vector<Aspect> aspects;

    void validate() const {
        if (aspects.empty()) throw ConfigError("hierarchy: no aspects");
        double aspect_sum = 0.0;
        for (const auto& aspect : aspects) {
            if (aspect.name.empty()) throw ConfigError("hierarchy: empty aspect name");
            aspect_sum += aspect.weight;
            if (aspect.subcriteria.empty())
                throw ConfigError("hierarchy: aspect '" + aspect.name + "' has no subcriteria");
            double score_sum = 0.0;
            for (const auto& sub : aspect.subcriteria) {
                score_sum += sub.score;
                if (sub.classes.size() < 2)
                    throw ConfigError("hierarchy: subcriterion '" + sub.name +
                                      "' needs at least 2 classes");
            }
            if (std::abs(score_sum - 1.0) > kWeightSumTolerance)
                throw ConfigError("hierarchy: subcriterion scores of aspect '" + aspect.name +
                                  "' sum to " + text::format_double(score_sum) +
                                  ", expected 1 within " +
                                  text::format_double(kWeightSumTolerance));
        }
        if (std::abs(aspect_sum - 1.0) > kWeightSumTolerance)
            throw ConfigError("hierarchy: aspect weights sum to " +
                              text::format_double(aspect_sum) + ", expected 1 within " +
                              text::format_double(kWeightSumTolerance));
    }
};

struct Coefficient {
    std::string aspect;
    std::string subcriterion;
    double coefficient = 0.0; // aspect weight x subcriterion score
    std::vector<HierarchyClass> classes;
};

/// Flattens the hierarchy into overlay coefficients in declaration order.
inline std::vector<Coefficient> compile_coefficients(const Hierarchy& h) {
    h.validate();
    std::vector<Coefficient> out;
    for (const auto& aspect : h.aspects)
        for (const auto& sub : aspect.subcriteria)
            out.push_back({aspect.name, sub.name, aspect.weight * sub.score, sub.classes});
    return out;
}

/// Matrix CSV: n rows of n comma-separated entries; entries may be decimal
/// or fractions like "1/3".
inline PairwiseMatrix parse_matrix_csv(std::string_view content,
                                       const std::string& context = "pairwise matrix") {
    auto rows = csv::parse(content, context);
    if (rows.empty()) throw ConfigError(context + ": empty file");
    const size_t n = rows.size();
    PairwiseMatrix m(n, std::vector<double>(n * n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw ConfigError(context + ": row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(n));
        for (size_t j = 0; j < n; ++j) {
            const std::string& tok = rows[i][j];
            size_t slash = tok.find('/');
            double v = 0.0;
            if (slash != std::string::npos) {
                double num = text::parse_double(text::trim(tok.substr(0, slash)),
                                                context + ": row " + std::to_string(i + 1));
                double den = text::parse_double(text::trim(tok.substr(slash + 1)),
                                                context + ": row " + std::to_string(i + 1));
                if (den == 0.0)
                    throw ConfigError(context + ": row " + std::to_string(i + 1) +
                                      ": zero denominator in '" + tok + "'");
                v = num / den;
            } else {
                v = text::parse_double(tok, context + ": row " + std::to_string(i + 1));
            }
            m.at(i, j) = v;
        }
    }
    return m;
}

/// Hierarchy JSON: {"aspects": [{"name", "weight", "subcriteria":
/// [{"name", "score", "classes": [{"label", "value"}...]}...]}...]}
inline Hierarchy parse_hierarchy_json(std::string_view content,
                                      const std::string& context = "hierarchy") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(context + ": invalid JSON: " + e.what());
    }
    Hierarchy h;
    try {
        for (const auto& a : doc.at("aspects")) {
            Aspect aspect;
            aspect.name = a.at("name").get<std::string>();
            aspect.weight = a.at("weight").get<double>();
            for (const auto& s : a.at("subcriteria")) {
                Subcriterion sub;
                sub.name = s.at("name").get<std::string>();
                sub.score = s.at("score").get<double>();
                for (const auto& c : s.at("classes"))
                    sub.classes.push_back(
                        {c.at("label").get<std::string>(), c.at("value").get<double>()});
                aspect.subcriteria.push_back(std::move(sub));
            }
            h.aspects.push_back(std::move(aspect));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(context + ": " + e.what());
    }
    h.validate();
    return h;
}

} // namespace cornplan::ahp
