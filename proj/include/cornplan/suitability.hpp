#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cornplan/common.hpp"
#include "cornplan/csv.hpp"
#include "cornplan/geodata.hpp"

namespace cornplan::suit {

/// FAO land suitability classes ordered by increasing severity.
enum class SuitClass { S1 = 0, S2 = 1, S3 = 2, N = 3 };

inline const char* to_string(SuitClass c) {
    switch (c) {
        case SuitClass::S1: return "S1";
        case SuitClass::S2: return "S2";
        case SuitClass::S3: return "S3";
        default: return "N";
    }
}

inline SuitClass parse_suit_class(std::string_view s) {
    if (s == "S1") return SuitClass::S1;
    if (s == "S2") return SuitClass::S2;
    if (s == "S3") return SuitClass::S3;
    if (s == "N") return SuitClass::N;
    throw ConfigError("unknown suitability class '" + std::string(s) + "'");
}

/// FAO limiting-factor groups in canonical order: temperature, water,
/// rooting, nutrient retention, nutrients available, erosion, flood.
inline constexpr char kGroupOrder[] = {'t', 'w', 'r', 'f', 'n', 'e', 'b'};

inline bool is_valid_group(char g) {
    for (char c : kGroupOrder)
        if (c == g) return true;
    return false;
}

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double v) const { return v >= lo && v <= hi; } // closed ends
};

enum class CharacteristicKind { Numeric, Categorical };

/// Rating rules for one land characteristic. Numeric values match closed
/// intervals in severity order S1, S2, S3 and fall back to N; categorical
/// labels must be listed explicitly.
struct CharacteristicSpec {
    std::string name;
    char group = 't';
    CharacteristicKind kind = CharacteristicKind::Numeric;
    std::vector<Interval> intervals_s1;
    std::vector<Interval> intervals_s2;
    std::vector<Interval> intervals_s3;
    std::map<std::string, SuitClass> categories;

    void validate() const {
        if (name.empty()) throw ConfigError("characteristic spec: empty name");
        if (!is_valid_group(group))
            throw ConfigError("characteristic '" + name + "': group '" +
                              std::string(1, group) + "' not one of t,w,r,f,n,e,b");
        auto check = [&](const std::vector<Interval>& ivs, const char* cls) {
            std::vector<Interval> sorted = ivs;
            std::sort(sorted.begin(), sorted.end(),
                      [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
            for (size_t i = 0; i < sorted.size(); ++i) {
                if (sorted[i].lo > sorted[i].hi)
                    throw ConfigError("characteristic '" + name + "': empty interval in " +
                                      cls);
                if (i > 0 && sorted[i].lo <= sorted[i - 1].hi)
                    throw ConfigError("characteristic '" + name +
                                      "': overlapping intervals within " + cls);
            }
        };
        if (kind == CharacteristicKind::Numeric) {
            check(intervals_s1, "S1");
            check(intervals_s2, "S2");
            check(intervals_s3, "S3");
        } else if (categories.empty()) {
            throw ConfigError("characteristic '" + name + "': no category ratings");
        }
    }
};

struct CropRequirementTable {
    std::string crop;
    std::vector<CharacteristicSpec> characteristics;

    void validate() const {
        if (characteristics.empty())
            throw ConfigError("crop requirement table: no characteristics");
        std::map<std::string, int> seen;
        for (const auto& c : characteristics) {
            c.validate();
            if (++seen[c.name] > 1)
                throw ConfigError("crop requirement table: duplicate characteristic '" +
                                  c.name + "'");
        }
    }
};

using ObservedValue = std::variant<double, std::string>;

struct LandUnitObservation {
    std::string unit_id;
    std::map<std::string, ObservedValue> values;
};

/// Rates one observed value against the characteristic rules.
inline SuitClass rate_characteristic(const ObservedValue& value, const CharacteristicSpec& spec) {
    spec.validate();
    if (spec.kind == CharacteristicKind::Numeric) {
        if (!std::holds_alternative<double>(value))
            throw ConfigError("characteristic '" + spec.name +
                              "': expected a numeric value, got label '" +
                              std::get<std::string>(value) + "'");
        double v = std::get<double>(value);
        if (std::isnan(v))
            throw ConfigError("characteristic '" + spec.name + "': NaN value");
        for (const auto& iv : spec.intervals_s1)
            if (iv.contains(v)) return SuitClass::S1;
        for (const auto& iv : spec.intervals_s2)
            if (iv.contains(v)) return SuitClass::S2;
        for (const auto& iv : spec.intervals_s3)
            if (iv.contains(v)) return SuitClass::S3;
        return SuitClass::N;
    }
    if (!std::holds_alternative<std::string>(value))
        throw ConfigError("characteristic '" + spec.name + "': expected a class label");
    const std::string& label = std::get<std::string>(value);
    auto it = spec.categories.find(label);
    if (it == spec.categories.end())
        throw ConfigError("characteristic '" + spec.name + "': label '" + label +
                          "' has no rating");
    return it->second;
}

struct SuitabilityResult {
    std::string unit_id;
    std::map<std::string, SuitClass> per_characteristic;
    SuitClass overall = SuitClass::S1;
    std::vector<char> limiting_groups; // canonical order
    std::string subclass;              // e.g. "S3rf"; bare class label for S1
};

/// Maximum-limitation aggregation: the overall class is the worst-rated
/// characteristic; limiting groups are those with a characteristic rated
/// exactly at the overall class, appended in canonical order (no suffix
/// for S1).
inline SuitabilityResult evaluate_unit(const LandUnitObservation& obs,
                                       const CropRequirementTable& table) {
    table.validate();
    SuitabilityResult res;
    res.unit_id = obs.unit_id;
    for (const auto& spec : table.characteristics) {
        auto it = obs.values.find(spec.name);
        if (it == obs.values.end())
            throw ConfigError("unit '" + obs.unit_id + "': missing value for characteristic '" +
                              spec.name + "'");
        SuitClass rated = rate_characteristic(it->second, spec);
        res.per_characteristic.emplace(spec.name, rated);
        if (static_cast<int>(rated) > static_cast<int>(res.overall)) res.overall = rated;
    }
    for (char g : kGroupOrder) {
        bool limiting = false;
        for (const auto& spec : table.characteristics) {
            if (spec.group == g && res.per_characteristic.at(spec.name) == res.overall) {
                limiting = true;
                break;
            }
        }
        if (limiting) res.limiting_groups.push_back(g);
    }
    res.subclass = to_string(res.overall);
    if (res.overall != SuitClass::S1)
        for (char g : res.limiting_groups) res.subclass += g;
    return res;
}

/// Hectares per subclass over a unit-id raster: cell count x cellsize^2
/// / 10^4 with cellsize in metres. Every raster label must map to a result.
inline std::map<std::string, double> area_summary(const geodata::CategoricalRaster& units,
                                                  const std::vector<SuitabilityResult>& results) {
    units.validate("area_summary");
    std::map<std::string, std::string> subclass_of;
    for (const auto& r : results) subclass_of.emplace(r.unit_id, r.subclass);

    std::map<std::string, double> cells;
    for (size_t i = 0; i < units.codes.size(); ++i) {
        if (units.is_nodata(i)) continue;
        const std::string& unit = units.legend.label(units.codes[i]);
        auto it = subclass_of.find(unit);
        if (it == subclass_of.end())
            throw ConfigError("area_summary: no suitability result for unit '" + unit + "'");
        cells[it->second] += 1.0;
    }
    const double ha_per_cell = units.header.cellsize * units.header.cellsize / 1e4;
    std::map<std::string, double> hectares;
    for (const auto& [subclass, n] : cells) hectares.emplace(subclass, n * ha_per_cell);
    return hectares;
}

/// Crop requirement JSON: {"crop": "...", "characteristics": [{"name",
/// "group", "kind": "numeric"|"categorical", "classes": ...}]}. Numeric
/// classes list {"class", "intervals": [[lo, hi]...]} with null for an open
/// end; categorical classes map label -> class.
inline CropRequirementTable parse_crop_table_json(std::string_view content,
                                                  const std::string& context = "crop table") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(context + ": invalid JSON: " + e.what());
    }
    CropRequirementTable table;
    try {
        table.crop = doc.value("crop", std::string("unnamed"));
        for (const auto& c : doc.at("characteristics")) {
            CharacteristicSpec spec;
            spec.name = c.at("name").get<std::string>();
            std::string group = c.at("group").get<std::string>();
            if (group.size() != 1)
                throw ConfigError(context + ": characteristic '" + spec.name +
                                  "': group must be a single letter");
            spec.group = group[0];
            std::string kind = text::lower(c.at("kind").get<std::string>());
            if (kind == "numeric") {
                spec.kind = CharacteristicKind::Numeric;
                for (const auto& cls : c.at("classes")) {
                    SuitClass sc = parse_suit_class(cls.at("class").get<std::string>());
                    std::vector<Interval>* target = nullptr;
                    if (sc == SuitClass::S1) target = &spec.intervals_s1;
                    else if (sc == SuitClass::S2) target = &spec.intervals_s2;
                    else if (sc == SuitClass::S3) target = &spec.intervals_s3;
                    else
                        throw ConfigError(context + ": characteristic '" + spec.name +
                                          "': N is the fallback and takes no intervals");
                    for (const auto& iv : cls.at("intervals")) {
                        Interval interval;
                        if (!iv.at(0).is_null()) interval.lo = iv.at(0).get<double>();
                        if (!iv.at(1).is_null()) interval.hi = iv.at(1).get<double>();
                        target->push_back(interval);
                    }
                }
            } else if (kind == "categorical") {
                spec.kind = CharacteristicKind::Categorical;
                for (const auto& [label, cls] : c.at("classes").items())
                    spec.categories.emplace(label, parse_suit_class(cls.get<std::string>()));
            } else {
                throw ConfigError(context + ": characteristic '" + spec.name +
                                  "': kind must be numeric|categorical");
            }
            table.characteristics.push_back(std::move(spec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(context + ": " + e.what());
    }
    table.validate();
    return table;
}

/// Observation CSV: header `unit_id,<characteristic...>`, values parsed per
/// the characteristic kind.
inline std::vector<LandUnitObservation> parse_observations_csv(
    std::string_view content, const CropRequirementTable& table,
    const std::string& context = "observations") {
    table.validate();
    auto rows = csv::parse(content, context);
    if (rows.empty()) throw ConfigError(context + ": empty file");
    const auto& header = rows[0];
    if (header.empty() || text::lower(header[0]) != "unit_id")
        throw ConfigError(context + ": first header column must be 'unit_id'");

    std::map<std::string, const CharacteristicSpec*> spec_of;
    for (const auto& spec : table.characteristics) spec_of.emplace(spec.name, &spec);
    std::vector<const CharacteristicSpec*> col_spec(header.size(), nullptr);
    for (size_t c = 1; c < header.size(); ++c) {
        auto it = spec_of.find(header[c]);
        if (it == spec_of.end())
            throw ConfigError(context + ": column '" + header[c] +
                              "' is not a characteristic of crop '" + table.crop + "'");
        col_spec[c] = it->second;
    }

    std::vector<LandUnitObservation> out;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw ConfigError(context + ": row " + std::to_string(r + 1) + " has " +
                              std::to_string(row.size()) + " fields, expected " +
                              std::to_string(header.size()));
        LandUnitObservation obs;
        obs.unit_id = row[0];
        if (obs.unit_id.empty())
            throw ConfigError(context + ": row " + std::to_string(r + 1) + ": empty unit_id");
        for (size_t c = 1; c < header.size(); ++c) {
            const CharacteristicSpec* spec = col_spec[c];
            if (spec->kind == CharacteristicKind::Numeric) {
                obs.values.emplace(spec->name,
                                   text::parse_double(row[c], context + ": row " +
                                                                  std::to_string(r + 1) +
                                                                  ", column '" + spec->name +
                                                                  "'"));
            } else {
                obs.values.emplace(spec->name, row[c]);
            }
        }
        out.push_back(std::move(obs));
    }
    return out;
}

} // namespace cornplan::suit
