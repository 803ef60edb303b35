#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "cornplan/common.hpp"
#include "cornplan/geodata.hpp"

namespace cornplan::overlay {

inline constexpr double kSpWeightSumMin = 0.98;
inline constexpr double kSpWeightSumMax = 1.02;

/// One subcriterion class map plus the class score values it is combined
/// with (Hierarchy class values keyed by legend label).
struct SubcriterionLayer {
    std::string name;
    geodata::CategoricalRaster raster;
    std::map<std::string, double> class_values;

    void validate() const {
        raster.validate("layer '" + name + "'");
        for (const auto& [code, label] : raster.legend.entries)
            if (!class_values.count(label))
                throw ConfigError("layer '" + name + "': no class value for label '" + label +
                                  "'");
    }
};

struct AspectSurface {
    std::string name;
    geodata::NumericRaster raster;
};

/// Weighted per-cell sum of class values: cell = sum_k score_k * value_k.
/// Nodata in any layer makes the output cell nodata.
inline AspectSurface aspect_score(const std::string& aspect_name,
                                  const std::vector<SubcriterionLayer>& layers,
                                  const std::map<std::string, double>& scores) {
    if (layers.empty()) throw ConfigError("aspect_score: no layers for '" + aspect_name + "'");
    std::vector<geodata::GridHeader> headers;
    for (const auto& layer : layers) {
        layer.validate();
        if (!scores.count(layer.name))
            throw ConfigError("aspect_score: no subcriterion score for layer '" + layer.name +
                              "'");
        headers.push_back(layer.raster.header);
    }
    geodata::assert_aligned(headers);

    AspectSurface out;
    out.name = aspect_name;
    out.raster.header = layers.front().raster.header;
    const size_t count = out.raster.header.cell_count();
    out.raster.cells.assign(count, 0.0);

    for (size_t i = 0; i < count; ++i) {
        double acc = 0.0;
        bool missing = false;
        for (const auto& layer : layers) {
            if (layer.raster.is_nodata(i)) {
                missing = true;
                break;
            }
            const std::string& label = layer.raster.legend.label(layer.raster.codes[i]);
            acc += scores.at(layer.name) * layer.class_values.at(label);
        }
        out.raster.cells[i] = missing ? out.raster.header.nodata_value : acc;
    }
    return out;
}

/// SP composite: cell = w_eco*eco + w_econ*econ + w_soc*soc. Weights must be
/// non-negative and sum to 1 within [0.98, 1.02]; with renormalize they are
/// rescaled to sum exactly 1 first. The nodata mask is the union of the
/// input masks.
inline geodata::NumericRaster sp_corn(const AspectSurface& eco, const AspectSurface& econ,
                                      const AspectSurface& soc, std::array<double, 3> weights,
                                      bool renormalize = false) {
    double sum = weights[0] + weights[1] + weights[2];
    for (double w : weights)
        if (!(w >= 0.0)) throw ConfigError("sp_corn: weights must be non-negative");
    if (sum < kSpWeightSumMin || sum > kSpWeightSumMax)
        throw ConfigError("sp_corn: weights sum to " + text::format_double(sum) +
                          ", outside [" + text::format_double(kSpWeightSumMin) + ", " +
                          text::format_double(kSpWeightSumMax) + "]");
    if (renormalize)
        for (double& w : weights) w /= sum;

    geodata::assert_aligned({eco.raster.header, econ.raster.header, soc.raster.header});
    eco.raster.validate("sp_corn: " + eco.name);
    econ.raster.validate("sp_corn: " + econ.name);
    soc.raster.validate("sp_corn: " + soc.name);

    geodata::NumericRaster out;
    out.header = eco.raster.header;
    const size_t count = out.header.cell_count();
    out.cells.assign(count, 0.0);
    for (size_t i = 0; i < count; ++i) {
        if (eco.raster.is_nodata(i) || econ.raster.is_nodata(i) || soc.raster.is_nodata(i)) {
            out.cells[i] = out.header.nodata_value;
            continue;
        }
        out.cells[i] = weights[0] * eco.raster.cells[i] + weights[1] * econ.raster.cells[i] +
                       weights[2] * soc.raster.cells[i];
    }
    return out;
}

} // namespace cornplan::overlay
