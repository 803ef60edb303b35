#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cornplan/common.hpp"
#include "cornplan/rng.hpp"

namespace cornplan::mds {

struct SquareMatrix {
    size_t n = 0;
    std::vector<double> data; // row-major n*n

    SquareMatrix() = default;
    explicit SquareMatrix(size_t size) : n(size), data(size * size, 0.0) {}

    double& at(size_t i, size_t j) { return data[i * n + j]; }
    double at(size_t i, size_t j) const { return data[i * n + j]; }
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

namespace detail {

struct EigenResult {
    std::vector<double> values;  // descending
    std::vector<double> vectors; // column-major: vectors[c * n + i]
};

/// Cyclic Jacobi eigendecomposition for small dense symmetric matrices.
/// Deterministic sweep order; eigenvector signs fixed so the largest
/// magnitude component is positive.
inline EigenResult symmetric_eigen(SquareMatrix a) {
    const size_t n = a.n;
    std::vector<double> v(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double frob = 0.0;
    for (double x : a.data) frob += x * x;
    frob = std::sqrt(frob);
    const double stop = std::max(1e-300, 1e-14 * frob);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) off += 2.0 * a.at(p, q) * a.at(p, q);
        if (std::sqrt(off) <= stop) break;

        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (apq == 0.0) continue;
                double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (size_t i = 0; i < n; ++i) {
                    double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (size_t i = 0; i < n; ++i) {
                    double api = a.at(p, i), aqi = a.at(q, i);
                    a.at(p, i) = c * api - s * aqi;
                    a.at(q, i) = s * api + c * aqi;
                }
                for (size_t i = 0; i < n; ++i) {
                    double vip = v[i * n + p], viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return a.at(x, x) > a.at(y, y); });

    EigenResult out;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (size_t c = 0; c < n; ++c) {
        size_t src = order[c];
        out.values[c] = a.at(src, src);
        size_t imax = 0;
        double vmax = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double comp = v[i * n + src];
            if (std::abs(comp) > vmax) {
                vmax = std::abs(comp);
                imax = i;
            }
        }
        double sign = v[imax * n + src] < 0.0 ? -1.0 : 1.0;
        for (size_t i = 0; i < n; ++i) out.vectors[c * n + i] = sign * v[i * n + src];
    }
    return out;
}

inline double point_dist(const Point& a, const Point& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double raw_stress(const SquareMatrix& delta, const std::vector<Point>& x) {
    double s = 0.0;
    for (size_t i = 0; i < delta.n; ++i)
        for (size_t j = i + 1; j < delta.n; ++j) {
            double r = delta.at(i, j) - point_dist(x[i], x[j]);
            s += r * r;
        }
    return s;
}

/// Torgerson double-centering initialization; falls back to a seeded random
/// configuration when the centered matrix has no positive spectrum.
inline std::vector<Point> classical_init(const SquareMatrix& delta, std::uint64_t seed,
                                         bool& random_init) {
    const size_t n = delta.n;
    random_init = false;

    SquareMatrix b(n);
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double a = -0.5 * delta.at(i, j) * delta.at(i, j);
            b.at(i, j) = a;
            row_mean[i] += a;
            grand += a;
        }
    for (size_t i = 0; i < n; ++i) row_mean[i] /= static_cast<double>(n);
    grand /= static_cast<double>(n * n);
    double scale = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            b.at(i, j) = b.at(i, j) - row_mean[i] - row_mean[j] + grand;
            scale = std::max(scale, std::abs(b.at(i, j)));
        }

    std::vector<Point> x(n);
    EigenResult eig = symmetric_eigen(b);
    const double tiny = 1e-12 * std::max(1.0, scale);
    if (n < 2 || eig.values[0] <= tiny) {
        bool all_zero = true;
        for (double d : delta.data)
            if (d != 0.0) { all_zero = false; break; }
        if (all_zero) return x; // coincident configuration is already optimal
        random_init = true;
        SplitMix64 rng(seed);
        for (auto& p : x) {
            p.x = rng.next_double() - 0.5;
            p.y = rng.next_double() - 0.5;
        }
        return x;
    }
    double s1 = std::sqrt(eig.values[0]);
    double s2 = eig.values[1] > tiny ? std::sqrt(eig.values[1]) : 0.0;
    for (size_t i = 0; i < n; ++i) {
        x[i].x = s1 * eig.vectors[0 * n + i];
        x[i].y = s2 * eig.vectors[1 * n + i];
    }
    return x;
}

} // namespace detail

struct SmacofParams {
    int max_iter = 500;
    double tol = 1e-8; // stop when the raw-stress decrease falls below this
    std::uint64_t seed = 0;
};

struct SmacofResult {
    std::vector<Point> coords;
    double stress1 = 0.0; // Kruskal stress-1
    double rsq = 1.0;     // squared Pearson correlation, distances vs dissimilarities
    std::vector<double> stress_history; // raw stress of every accepted configuration
    int iterations = 0;
    bool converged = false;
    bool random_init = false;
};

/// Metric MDS in two dimensions by stress majorization: classical-scaling
/// start, then iterated Guttman transforms. The raw stress of the accepted
/// configurations never increases.
inline SmacofResult smacof_mds(const SquareMatrix& delta, const SmacofParams& params = {}) {
    const size_t n = delta.n;
    if (n == 0) throw ConfigError("smacof_mds: empty dissimilarity matrix");
    if (delta.data.size() != n * n)
        throw ConfigError("smacof_mds: matrix storage does not match its size");
    for (size_t i = 0; i < n; ++i) {
        if (delta.at(i, i) != 0.0)
            throw ConfigError("smacof_mds: diagonal must be zero at index " + std::to_string(i));
        for (size_t j = 0; j < n; ++j) {
            double d = delta.at(i, j);
            if (std::isnan(d)) throw ConfigError("smacof_mds: NaN dissimilarity");
            if (d < 0.0)
                throw ConfigError("smacof_mds: negative dissimilarity at (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
            if (d != delta.at(j, i))
                throw ConfigError("smacof_mds: non-symmetric input at (" + std::to_string(i) +
                                  "," + std::to_string(j) + ")");
        }
    }

    SmacofResult res;
    res.coords = detail::classical_init(delta, params.seed, res.random_init);
    double stress = detail::raw_stress(delta, res.coords);
    res.stress_history.push_back(stress);

    std::vector<Point> next(n);
    for (int iter = 1; iter <= params.max_iter; ++iter) {
        // Guttman transform: x_i' = (1/n) * sum_j (delta_ij / d_ij) (x_i - x_j)
        for (size_t i = 0; i < n; ++i) {
            double sx = 0.0, sy = 0.0;
            for (size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                double d = detail::point_dist(res.coords[i], res.coords[j]);
                if (d <= 0.0) continue;
                double w = delta.at(i, j) / d;
                sx += w * (res.coords[i].x - res.coords[j].x);
                sy += w * (res.coords[i].y - res.coords[j].y);
            }
            next[i].x = sx / static_cast<double>(n);
            next[i].y = sy / static_cast<double>(n);
        }
        double next_stress = detail::raw_stress(delta, next);
        if (next_stress > stress) break; // fp guard; majorization excludes a true increase
        res.coords = next;
        double decrease = stress - next_stress;
        stress = next_stress;
        res.stress_history.push_back(stress);
        res.iterations = iter;
        if (decrease < params.tol) {
            res.converged = true;
            break;
        }
    }

    double num = 0.0, denom = 0.0;
    double sum_d = 0.0, sum_dd = 0.0, sum_x = 0.0, sum_xx = 0.0, sum_xd = 0.0;
    double pairs = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            double d = detail::point_dist(res.coords[i], res.coords[j]);
            double t = delta.at(i, j);
            double r = t - d;
            num += r * r;
            denom += d * d;
            sum_d += d;
            sum_dd += d * d;
            sum_x += t;
            sum_xx += t * t;
            sum_xd += t * d;
            pairs += 1.0;
        }
    res.stress1 = denom > 0.0 ? std::sqrt(num / denom)
                              : (num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    double var_d = sum_dd - sum_d * sum_d / std::max(pairs, 1.0);
    double var_x = sum_xx - sum_x * sum_x / std::max(pairs, 1.0);
    double cov = sum_xd - sum_x * sum_d / std::max(pairs, 1.0);
    if (var_d <= 0.0 || var_x <= 0.0) {
        res.rsq = num == 0.0 ? 1.0 : 0.0;
    } else {
        double r = cov / std::sqrt(var_d * var_x);
        res.rsq = std::min(1.0, std::max(0.0, r * r));
    }
    return res;
}

/// Similarity transform (rotation + translation + uniform scale) placing the
/// BAD reference at (0,0) and the GOOD reference at (100,0); every row is
/// transformed identically and the references are pinned exactly.
inline std::vector<Point> align_to_axis(std::vector<Point> coords, size_t good, size_t bad) {
    if (good >= coords.size() || bad >= coords.size() || good == bad)
        throw ConfigError("align_to_axis: invalid reference row indices");
    double gx = coords[good].x - coords[bad].x;
    double gy = coords[good].y - coords[bad].y;
    double norm2 = gx * gx + gy * gy;
    if (std::sqrt(norm2) < 1e-12)
        throw NumericError("degenerate ordination: GOOD and BAD reference points coincide");
    // complex multiplication by 100 / (good - bad)
    double ax = 100.0 * gx / norm2;
    double ay = -100.0 * gy / norm2;
    double bx = coords[bad].x, by = coords[bad].y;
    for (auto& p : coords) {
        double zx = p.x - bx, zy = p.y - by;
        p = Point{ax * zx - ay * zy, ax * zy + ay * zx};
    }
    coords[good] = Point{100.0, 0.0};
    coords[bad] = Point{0.0, 0.0};
    return coords;
}

} // namespace cornplan::mds
