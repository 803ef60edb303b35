#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cornplan/ahp.hpp"
#include "cornplan/classify.hpp"
#include "cornplan/common.hpp"
#include "cornplan/digest.hpp"
#include "cornplan/geodata.hpp"
#include "cornplan/kite_svg.hpp"
#include "cornplan/overlay.hpp"
#include "cornplan/rapcorn.hpp"
#include "cornplan/rng.hpp"
#include "cornplan/suitability.hpp"

namespace cornplan::pipeline {

using ordered_json = nlohmann::ordered_json;

struct SuitabilityConfig {
    std::string crop_table;
    std::string observations;
    std::optional<std::string> unit_raster;
    std::optional<std::string> unit_legend;
};

struct RapDimensionConfig {
    std::string name;
    std::string schema;
    std::string scores;
};

struct RapConfig {
    std::vector<RapDimensionConfig> dimensions;
    int trials = 200;
    double flip_prob = 0.1;
    int max_iter = 500;
    double tol = 1e-8;
};

struct AhpMatrixRef {
    std::string path;
    std::vector<std::string> names; // item named by each row/column
};

struct AhpMatricesConfig {
    AhpMatrixRef aspects;
    std::vector<std::pair<std::string, AhpMatrixRef>> subcriteria; // per aspect
    std::vector<std::pair<std::string, AhpMatrixRef>> classes;     // per subcriterion
};

struct AhpConfig {
    std::optional<std::string> hierarchy; // literal Table-3-style tree
    std::optional<AhpMatricesConfig> matrices;
};

struct LayerConfig {
    std::string subcriterion;
    std::string raster;
    std::string legend;
};

struct OverlayConfig {
    std::vector<LayerConfig> layers;
    std::string weights_variant = "hierarchy"; // hierarchy|equation|text|table|explicit
    std::array<double, 3> explicit_weights{0.0, 0.0, 0.0};
    bool renormalize_weights = false;
};

struct ClassifyConfig {
    int k = 3;
    std::optional<std::string> raster; // defaults to the overlay SP output
    std::map<int, std::vector<std::string>> directions; // per priority class
};

struct PipelineConfig {
    std::filesystem::path base_dir; // directory of the config file
    std::string config_name;        // file name only, kept out-dir independent
    std::string config_digest;
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 0;
    bool strict = false;
    int asc_decimals = 6;

    std::optional<SuitabilityConfig> suitability;
    std::optional<RapConfig> rap;
    std::optional<AhpConfig> ahp;
    std::optional<OverlayConfig> overlay;
    std::optional<ClassifyConfig> classify;
};

/// Development directions attached to the three priority classes of the
/// default corn planning report; overridable per run.
inline const std::map<int, std::vector<std::string>>& default_directions() {
    static const std::map<int, std::vector<std::string>> kDirections = {
        {1,
         {"Increase soil organic matter levels with organic fertilizer",
          "The need for support and collaboration between government, research institutions "
          "and the private sector"}},
        {2,
         {"Increase soil organic matter levels with organic fertilizer",
          "The need for capacity development and empowerment programs",
          "The need for support and collaboration between government, research institutions "
          "and the private sector"}},
        {3,
         {"Increase soil organic matter levels with organic fertilizer",
          "The need for capacity development and empowerment programs",
          "The availability of educational programs",
          "The need for support and collaboration between government, research institutions "
          "and the private sector"}}};
    return kDirections;
}

namespace detail {

inline std::string resolve(const PipelineConfig& cfg, const std::string& rel) {
    std::filesystem::path p(rel);
    if (p.is_absolute()) return p.string();
    return (cfg.base_dir / p).string();
}

inline void require_exists(const PipelineConfig& cfg, const std::string& rel,
                           const std::string& what) {
    if (!std::filesystem::exists(resolve(cfg, rel)))
        throw ConfigError("config: " + what + " path does not exist: " + rel);
}

/// Loads a config-relative input and records its digest keyed by the
/// config-relative path (output files must not embed machine paths).
struct InputRegistry {
    std::map<std::string, std::string> digests;

    std::string load(const PipelineConfig& cfg, const std::string& rel) {
        std::string content = read_file(resolve(cfg, rel));
        digests.emplace(rel, fnv1a64_hex(content));
        return content;
    }

    ordered_json to_json() const {
        ordered_json j = ordered_json::object();
        for (const auto& [path, digest] : digests) j[path] = digest;
        return j;
    }
};

inline std::string slug(const std::string& name) {
    std::string out;
    for (char c : name) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out += c;
        else if (c >= 'A' && c <= 'Z') out += static_cast<char>(c - 'A' + 'a');
        else if (!out.empty() && out.back() != '_') out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? std::string("unnamed") : out;
}

inline void write_output(const PipelineConfig& cfg, const std::string& name,
                         std::string_view content) {
    std::filesystem::create_directories(cfg.out_dir);
    write_file((cfg.out_dir / name).string(), content);
}

inline void write_json(const PipelineConfig& cfg, const std::string& name,
                       const ordered_json& doc) {
    write_output(cfg, name, doc.dump(2) + "\n");
}

} // namespace detail

/// Parses the single-document JSON config; every relative path is resolved
/// against the config file location and must exist.
inline PipelineConfig load_config(const std::string& path) {
    PipelineConfig cfg;
    std::string content = read_file(path);
    cfg.config_digest = fnv1a64_hex(content);
    std::filesystem::path p(path);
    cfg.base_dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
    cfg.config_name = p.filename().string();

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: invalid JSON: " + std::string(e.what()));
    }

    try {
        cfg.seed = doc.value("seed", 0ull);
        cfg.strict = doc.value("strict", false);
        cfg.asc_decimals = doc.value("asc_decimals", 6);
        if (cfg.asc_decimals < 0 || cfg.asc_decimals > 15)
            throw ConfigError("config: asc_decimals must be in 0..15");
        if (doc.contains("out_dir")) {
            std::filesystem::path out(doc.at("out_dir").get<std::string>());
            cfg.out_dir = out.is_absolute() ? out : cfg.base_dir / out;
        } else {
            cfg.out_dir = cfg.base_dir / "out";
        }

        if (doc.contains("suitability")) {
            const auto& s = doc.at("suitability");
            SuitabilityConfig sc;
            sc.crop_table = s.at("crop_table").get<std::string>();
            sc.observations = s.at("observations").get<std::string>();
            if (s.contains("unit_raster")) {
                sc.unit_raster = s.at("unit_raster").get<std::string>();
                sc.unit_legend = s.at("unit_legend").get<std::string>();
            }
            cfg.suitability = std::move(sc);
        }

        if (doc.contains("rap")) {
            const auto& r = doc.at("rap");
            RapConfig rc;
            for (const auto& d : r.at("dimensions")) {
                RapDimensionConfig dim;
                dim.name = d.at("name").get<std::string>();
                dim.schema = d.at("schema").get<std::string>();
                dim.scores = d.at("scores").get<std::string>();
                rc.dimensions.push_back(std::move(dim));
            }
            rc.trials = r.value("trials", 200);
            rc.flip_prob = r.value("flip_prob", 0.1);
            rc.max_iter = r.value("max_iter", 500);
            rc.tol = r.value("tol", 1e-8);
            if (rc.dimensions.empty()) throw ConfigError("config: rap.dimensions is empty");
            cfg.rap = std::move(rc);
        }

        if (doc.contains("ahp")) {
            const auto& a = doc.at("ahp");
            AhpConfig ac;
            if (a.contains("hierarchy")) ac.hierarchy = a.at("hierarchy").get<std::string>();
            if (a.contains("matrices")) {
                const auto& m = a.at("matrices");
                AhpMatricesConfig mc;
                mc.aspects.path = m.at("aspects").at("file").get<std::string>();
                mc.aspects.names =
                    m.at("aspects").at("names").get<std::vector<std::string>>();
                for (const auto& [aspect, ref] : m.at("subcriteria").items()) {
                    AhpMatrixRef r;
                    r.path = ref.at("file").get<std::string>();
                    r.names = ref.at("names").get<std::vector<std::string>>();
                    mc.subcriteria.emplace_back(aspect, std::move(r));
                }
                for (const auto& [sub, ref] : m.at("classes").items()) {
                    AhpMatrixRef r;
                    r.path = ref.at("file").get<std::string>();
                    r.names = ref.at("names").get<std::vector<std::string>>();
                    mc.classes.emplace_back(sub, std::move(r));
                }
                ac.matrices = std::move(mc);
            }
            if (ac.hierarchy.has_value() == ac.matrices.has_value())
                throw ConfigError(
                    "config: ahp requires exactly one of 'hierarchy' or 'matrices'");
            cfg.ahp = std::move(ac);
        }

        if (doc.contains("overlay")) {
            const auto& o = doc.at("overlay");
            OverlayConfig oc;
            for (const auto& l : o.at("layers")) {
                LayerConfig lc;
                lc.subcriterion = l.at("subcriterion").get<std::string>();
                lc.raster = l.at("raster").get<std::string>();
                lc.legend = l.at("legend").get<std::string>();
                oc.layers.push_back(std::move(lc));
            }
            oc.weights_variant = o.value("weights_variant", std::string("hierarchy"));
            if (o.contains("weights"))
                oc.explicit_weights = o.at("weights").get<std::array<double, 3>>();
            oc.renormalize_weights = o.value("renormalize_weights", false);
            cfg.overlay = std::move(oc);
        }

        if (doc.contains("classify")) {
            const auto& c = doc.at("classify");
            ClassifyConfig cc;
            cc.k = c.value("k", 3);
            if (cc.k < 1) throw ConfigError("config: classify.k must be >= 1");
            if (c.contains("raster")) cc.raster = c.at("raster").get<std::string>();
            if (c.contains("directions")) {
                for (const auto& [key, texts] : c.at("directions").items()) {
                    int priority = static_cast<int>(text::parse_int(key, "config: directions"));
                    cc.directions[priority] = texts.get<std::vector<std::string>>();
                }
            } else {
                cc.directions = default_directions();
            }
            cfg.classify = std::move(cc);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }

    // Existence checks up front: a bad path fails before any computation.
    if (cfg.suitability) {
        detail::require_exists(cfg, cfg.suitability->crop_table, "crop_table");
        detail::require_exists(cfg, cfg.suitability->observations, "observations");
        if (cfg.suitability->unit_raster) {
            detail::require_exists(cfg, *cfg.suitability->unit_raster, "unit_raster");
            detail::require_exists(cfg, *cfg.suitability->unit_legend, "unit_legend");
        }
    }
    if (cfg.rap) {
        for (const auto& d : cfg.rap->dimensions) {
            detail::require_exists(cfg, d.schema, "rap schema");
            detail::require_exists(cfg, d.scores, "rap scores");
        }
    }
    if (cfg.ahp) {
        if (cfg.ahp->hierarchy) detail::require_exists(cfg, *cfg.ahp->hierarchy, "hierarchy");
        if (cfg.ahp->matrices) {
            detail::require_exists(cfg, cfg.ahp->matrices->aspects.path, "ahp aspects matrix");
            for (const auto& [name, ref] : cfg.ahp->matrices->subcriteria)
                detail::require_exists(cfg, ref.path, "ahp subcriteria matrix '" + name + "'");
            for (const auto& [name, ref] : cfg.ahp->matrices->classes)
                detail::require_exists(cfg, ref.path, "ahp class matrix '" + name + "'");
        }
    }
    if (cfg.overlay) {
        if (!cfg.ahp)
            throw ConfigError("config: overlay requires an ahp section for the hierarchy");
        for (const auto& l : cfg.overlay->layers) {
            detail::require_exists(cfg, l.raster, "layer raster '" + l.subcriterion + "'");
            detail::require_exists(cfg, l.legend, "layer legend '" + l.subcriterion + "'");
        }
    }
    if (cfg.classify && cfg.classify->raster)
        detail::require_exists(cfg, *cfg.classify->raster, "classify raster");

    return cfg;
}

// ---------------------------------------------------------------------------
// suitability stage
// ---------------------------------------------------------------------------

inline ordered_json cmd_suitability(const PipelineConfig& cfg) {
    if (!cfg.suitability) throw ConfigError("config: missing 'suitability' section");
    const auto& sc = *cfg.suitability;
    detail::InputRegistry inputs;

    suit::CropRequirementTable table =
        suit::parse_crop_table_json(inputs.load(cfg, sc.crop_table), sc.crop_table);
    auto observations =
        suit::parse_observations_csv(inputs.load(cfg, sc.observations), table, sc.observations);
    if (observations.empty())
        throw ConfigError(sc.observations + ": no observation rows");

    std::vector<suit::SuitabilityResult> results;
    results.reserve(observations.size());
    for (const auto& obs : observations) results.push_back(suit::evaluate_unit(obs, table));
    std::sort(results.begin(), results.end(),
              [](const auto& a, const auto& b) { return a.unit_id < b.unit_id; });

    std::string units_csv = "unit_id,subclass\n";
    for (const auto& r : results)
        units_csv += csv::write_line({r.unit_id, r.subclass});
    detail::write_output(cfg, "suitability_units.csv", units_csv);

    ordered_json stage;
    stage["crop"] = table.crop;
    ordered_json unit_rows = ordered_json::array();
    for (const auto& r : results) {
        ordered_json row;
        row["unit_id"] = r.unit_id;
        row["overall"] = suit::to_string(r.overall);
        row["subclass"] = r.subclass;
        std::string groups;
        for (char g : r.limiting_groups) groups += g;
        row["limiting_groups"] = groups;
        ordered_json per;
        for (const auto& spec : table.characteristics)
            per[spec.name] = suit::to_string(r.per_characteristic.at(spec.name));
        row["characteristics"] = per;
        unit_rows.push_back(row);
    }
    stage["units"] = unit_rows;

    if (sc.unit_raster) {
        geodata::Legend legend =
            geodata::parse_legend_csv(inputs.load(cfg, *sc.unit_legend), *sc.unit_legend);
        geodata::CategoricalRaster units = geodata::parse_categorical_grid(
            inputs.load(cfg, *sc.unit_raster), std::move(legend), *sc.unit_raster);
        auto areas = suit::area_summary(units, results);

        std::string areas_csv = "subclass,hectares\n";
        ordered_json area_json = ordered_json::object();
        for (const auto& [subclass, ha] : areas) {
            areas_csv += csv::write_line({subclass, text::format_fixed(ha, 2)});
            area_json[subclass] = ha;
        }
        detail::write_output(cfg, "suitability_areas.csv", areas_csv);
        stage["areas_ha"] = area_json;
    } else {
        stage["areas_ha"] = nullptr;
    }
    stage["inputs"] = inputs.to_json();
    return stage;
}

// ---------------------------------------------------------------------------
// rap stage
// ---------------------------------------------------------------------------

inline ordered_json cmd_rap(const PipelineConfig& cfg) {
    if (!cfg.rap) throw ConfigError("config: missing 'rap' section");
    const auto& rc = *cfg.rap;
    detail::InputRegistry inputs;

    ordered_json stage;
    stage["seed"] = cfg.seed;
    ordered_json dims = ordered_json::array();

    std::vector<std::string> axis_names;
    std::vector<std::map<std::string, double>> dim_indices;

    for (size_t d = 0; d < rc.dimensions.size(); ++d) {
        const auto& dim_cfg = rc.dimensions[d];
        rap::AttributeSchema schema =
            rap::parse_schema_json(inputs.load(cfg, dim_cfg.schema), dim_cfg.schema);
        rap::ScoreMatrix matrix =
            rap::parse_scores_csv(inputs.load(cfg, dim_cfg.scores), schema, dim_cfg.scores);

        rap::OrdinationParams params;
        params.max_iter = rc.max_iter;
        params.tol = rc.tol;
        params.seed = SplitMix64::stream(cfg.seed, d).next_u64();

        rap::OrdinationResult ord = rap::sustainability_index(matrix, params);

        ordered_json dj;
        dj["name"] = dim_cfg.name;
        dj["dimension"] = rap::to_string(schema.dimension);
        dj["stress1"] = ord.stress1;
        dj["rsq"] = ord.rsq;
        dj["iterations"] = ord.iterations;
        dj["converged"] = ord.converged;
        ordered_json idx = ordered_json::object();
        ordered_json cat = ordered_json::object();
        for (const auto& [id, value] : ord.index) {
            idx[id] = value;
            cat[id] = rap::to_string(rap::categorize(value));
        }
        dj["index"] = idx;
        dj["category"] = cat;
        dj["out_of_range"] = ord.out_of_range_ids;

        if (schema.attributes.size() >= 2) {
            rap::LeverageReport lev = rap::leverage(matrix, params);
            ordered_json lj = ordered_json::object();
            for (const auto& [attr, rms] : lev.rms) lj[attr] = rms;
            dj["leverage_rms"] = lj;
        } else {
            dj["leverage_rms"] = nullptr;
        }

        rap::MonteCarloReport mc =
            rap::monte_carlo(matrix, rc.trials, rc.flip_prob, params.seed, params);
        ordered_json mj;
        mj["trials"] = mc.trials;
        mj["flip_prob"] = mc.flip_prob;
        ordered_json objects = ordered_json::object();
        for (const auto& [id, st] : mc.objects) {
            ordered_json oj;
            oj["mean"] = st.mean;
            oj["stddev"] = st.stddev;
            oj["p2.5"] = st.p2_5;
            oj["p97.5"] = st.p97_5;
            objects[id] = oj;
        }
        mj["objects"] = objects;
        dj["monte_carlo"] = mj;

        dims.push_back(dj);
        axis_names.push_back(dim_cfg.name);
        dim_indices.push_back(ord.index);
    }
    stage["dimensions"] = dims;

    // kite polygons: one per object appearing in every dimension
    std::vector<std::string> common;
    for (const auto& [id, value] : dim_indices.front()) {
        (void)value;
        bool everywhere = true;
        for (const auto& m : dim_indices)
            if (!m.count(id)) everywhere = false;
        if (everywhere) common.push_back(id);
    }
    std::vector<kite::Series> series;
    for (const auto& id : common) {
        kite::Series s;
        s.label = id;
        for (const auto& m : dim_indices) s.values.push_back(m.at(id));
        series.push_back(std::move(s));
    }
    detail::write_output(cfg, "rap_kite.svg", kite::render_kite_svg(axis_names, series));
    stage["kite_objects"] = common;

    stage["inputs"] = inputs.to_json();
    detail::write_json(cfg, "rap_report.json", stage);
    return stage;
}

// ---------------------------------------------------------------------------
// ahp stage
// ---------------------------------------------------------------------------

namespace detail {

inline ahp::PairwiseMatrix load_named_matrix(const PipelineConfig& cfg, InputRegistry& inputs,
                                             const AhpMatrixRef& ref,
                                             const std::string& what) {
    ahp::PairwiseMatrix m = ahp::parse_matrix_csv(inputs.load(cfg, ref.path), ref.path);
    if (ref.names.size() != m.n)
        throw ConfigError("config: " + what + ": " + std::to_string(ref.names.size()) +
                          " names for a " + std::to_string(m.n) + "x" + std::to_string(m.n) +
                          " matrix");
    return m;
}

inline ordered_json matrix_report(const std::string& name, const ahp::PairwiseMatrix& m,
                                  const std::vector<double>& weights,
                                  const std::vector<std::string>& names,
                                  std::vector<std::string> warnings) {
    ahp::ConsistencyReport rep = ahp::consistency(m, weights);
    ordered_json j;
    j["matrix"] = name;
    ordered_json w = ordered_json::object();
    for (size_t i = 0; i < names.size(); ++i) w[names[i]] = weights[i];
    j["weights"] = w;
    j["lambda_max"] = rep.lambda_max;
    j["ci"] = rep.ci;
    j["ri"] = rep.ri;
    j["cr"] = rep.cr;
    j["consistent"] = rep.consistent;
    j["warnings"] = warnings;
    return j;
}

/// Builds the full hierarchy from pairwise matrices or loads the literal one.
inline ahp::Hierarchy load_hierarchy(const PipelineConfig& cfg, InputRegistry& inputs,
                                     ordered_json* matrix_reports, bool strict) {
    if (!cfg.ahp) throw ConfigError("config: missing 'ahp' section");
    const auto& ac = *cfg.ahp;

    if (ac.hierarchy)
        return ahp::parse_hierarchy_json(inputs.load(cfg, *ac.hierarchy), *ac.hierarchy);

    const AhpMatricesConfig& mc = *ac.matrices;
    ordered_json reports = ordered_json::array();
    auto check_strict = [strict](const std::string& name, double cr) {
        if (strict && cr > ahp::kConsistencyThreshold)
            throw NumericError("strict mode: matrix '" + name + "' has consistency ratio " +
                               text::format_double(cr) + " above " +
                               text::format_double(ahp::kConsistencyThreshold));
    };

    ahp::PairwiseMatrix aspects_m = load_named_matrix(cfg, inputs, mc.aspects, "ahp aspects");
    auto aspect_warnings = ahp::validate_matrix(aspects_m);
    std::vector<double> aspect_w = ahp::principal_weights(aspects_m);
    reports.push_back(
        matrix_report("aspects", aspects_m, aspect_w, mc.aspects.names, aspect_warnings));
    check_strict("aspects", ahp::consistency(aspects_m, aspect_w).cr);

    ahp::Hierarchy h;
    for (size_t a = 0; a < mc.aspects.names.size(); ++a) {
        ahp::Aspect aspect;
        aspect.name = mc.aspects.names[a];
        aspect.weight = aspect_w[a];

        const AhpMatrixRef* sub_ref = nullptr;
        for (const auto& [name, ref] : mc.subcriteria)
            if (name == aspect.name) sub_ref = &ref;
        if (!sub_ref)
            throw ConfigError("config: no subcriteria matrix for aspect '" + aspect.name + "'");
        ahp::PairwiseMatrix sub_m =
            load_named_matrix(cfg, inputs, *sub_ref, "subcriteria of " + aspect.name);
        auto sub_warnings = ahp::validate_matrix(sub_m);
        std::vector<double> sub_w = ahp::principal_weights(sub_m);
        reports.push_back(matrix_report("subcriteria:" + aspect.name, sub_m, sub_w,
                                        sub_ref->names, sub_warnings));
        check_strict("subcriteria:" + aspect.name, ahp::consistency(sub_m, sub_w).cr);

        for (size_t s = 0; s < sub_ref->names.size(); ++s) {
            ahp::Subcriterion sub;
            sub.name = sub_ref->names[s];
            sub.score = sub_w[s];

            const AhpMatrixRef* cls_ref = nullptr;
            for (const auto& [name, ref] : mc.classes)
                if (name == sub.name) cls_ref = &ref;
            if (!cls_ref)
                throw ConfigError("config: no class matrix for subcriterion '" + sub.name +
                                  "'");
            ahp::PairwiseMatrix cls_m =
                load_named_matrix(cfg, inputs, *cls_ref, "classes of " + sub.name);
            auto cls_warnings = ahp::validate_matrix(cls_m);
            std::vector<double> cls_w = ahp::principal_weights(cls_m);
            reports.push_back(matrix_report("classes:" + sub.name, cls_m, cls_w,
                                            cls_ref->names, cls_warnings));
            check_strict("classes:" + sub.name, ahp::consistency(cls_m, cls_w).cr);

            for (size_t c = 0; c < cls_ref->names.size(); ++c)
                sub.classes.push_back({cls_ref->names[c], cls_w[c]});
            aspect.subcriteria.push_back(std::move(sub));
        }
        h.aspects.push_back(std::move(aspect));
    }
    h.validate();
    if (matrix_reports) *matrix_reports = reports;
    return h;
}

} // namespace detail

inline ordered_json cmd_ahp(const PipelineConfig& cfg) {
    if (!cfg.ahp) throw ConfigError("config: missing 'ahp' section");
    detail::InputRegistry inputs;

    ordered_json matrix_reports = ordered_json::array();
    ahp::Hierarchy h = detail::load_hierarchy(cfg, inputs, &matrix_reports, cfg.strict);
    std::vector<ahp::Coefficient> coeffs = ahp::compile_coefficients(h);

    ordered_json stage;
    stage["mode"] = cfg.ahp->hierarchy ? "hierarchy" : "matrices";
    ordered_json aspects = ordered_json::object();
    for (const auto& a : h.aspects) aspects[a.name] = a.weight;
    stage["aspect_weights"] = aspects;
    if (!cfg.ahp->hierarchy) stage["matrices"] = matrix_reports;

    ordered_json table = ordered_json::array();
    for (const auto& c : coeffs) {
        ordered_json row;
        row["aspect"] = c.aspect;
        row["subcriterion"] = c.subcriterion;
        row["coefficient"] = c.coefficient;
        ordered_json classes = ordered_json::object();
        for (const auto& cls : c.classes) classes[cls.label] = cls.value;
        row["class_values"] = classes;
        table.push_back(row);
    }
    stage["coefficients"] = table;
    stage["inputs"] = inputs.to_json();
    detail::write_json(cfg, "ahp_report.json", stage);
    return stage;
}

// ---------------------------------------------------------------------------
// overlay stage
// ---------------------------------------------------------------------------

namespace detail {

inline std::array<double, 3> resolve_sp_weights(const ahp::Hierarchy& h,
                                                const OverlayConfig& oc) {
    if (oc.weights_variant == "hierarchy") {
        if (h.aspects.size() != 3)
            throw ConfigError("sp weights: 'hierarchy' variant needs exactly 3 aspects, got " +
                              std::to_string(h.aspects.size()));
        return {h.aspects[0].weight, h.aspects[1].weight, h.aspects[2].weight};
    }
    if (oc.weights_variant == "equation") return {0.46, 0.32, 0.21};
    if (oc.weights_variant == "text") return {0.46, 0.31, 0.21};
    if (oc.weights_variant == "table") return {0.46, 0.31, 0.23};
    if (oc.weights_variant == "explicit") return oc.explicit_weights;
    throw ConfigError("sp weights: unknown variant '" + oc.weights_variant +
                      "', expected hierarchy|equation|text|table|explicit");
}

} // namespace detail

inline ordered_json cmd_overlay(const PipelineConfig& cfg) {
    if (!cfg.overlay) throw ConfigError("config: missing 'overlay' section");
    const auto& oc = *cfg.overlay;
    detail::InputRegistry inputs;

    ahp::Hierarchy h = detail::load_hierarchy(cfg, inputs, nullptr, cfg.strict);
    if (h.aspects.size() != 3)
        throw ConfigError("overlay: the SP composite needs exactly 3 aspects, hierarchy has " +
                          std::to_string(h.aspects.size()));

    std::map<std::string, const LayerConfig*> layer_of;
    for (const auto& l : oc.layers) {
        if (!layer_of.emplace(l.subcriterion, &l).second)
            throw ConfigError("config: duplicate layer for subcriterion '" + l.subcriterion +
                              "'");
    }

    ordered_json stage;
    ordered_json surfaces = ordered_json::array();
    std::vector<overlay::AspectSurface> aspect_surfaces;

    for (const auto& aspect : h.aspects) {
        std::vector<overlay::SubcriterionLayer> layers;
        std::map<std::string, double> scores;
        for (const auto& sub : aspect.subcriteria) {
            auto it = layer_of.find(sub.name);
            if (it == layer_of.end())
                throw ConfigError("overlay: no layer configured for subcriterion '" +
                                  sub.name + "'");
            const LayerConfig& lc = *it->second;
            geodata::Legend legend =
                geodata::parse_legend_csv(inputs.load(cfg, lc.legend), lc.legend);
            overlay::SubcriterionLayer layer;
            layer.name = sub.name;
            layer.raster = geodata::parse_categorical_grid(inputs.load(cfg, lc.raster),
                                                           std::move(legend), lc.raster);
            for (const auto& cls : sub.classes) layer.class_values.emplace(cls.label, cls.value);
            layers.push_back(std::move(layer));
            scores.emplace(sub.name, sub.score);
        }
        overlay::AspectSurface surface = overlay::aspect_score(aspect.name, layers, scores);
        std::string file = "s_" + detail::slug(aspect.name) + ".asc";
        detail::write_output(cfg, file,
                             geodata::serialize_ascii_grid(surface.raster, cfg.asc_decimals));

        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (size_t i = 0; i < surface.raster.cells.size(); ++i) {
            if (surface.raster.is_nodata(i)) continue;
            double v = surface.raster.cells[i];
            if (first || v < lo) lo = v;
            if (first || v > hi) hi = v;
            first = false;
        }
        ordered_json sj;
        sj["aspect"] = aspect.name;
        sj["file"] = file;
        sj["min"] = first ? nullptr : ordered_json(lo);
        sj["max"] = first ? nullptr : ordered_json(hi);
        surfaces.push_back(sj);
        aspect_surfaces.push_back(std::move(surface));
    }
    stage["surfaces"] = surfaces;

    std::array<double, 3> weights = detail::resolve_sp_weights(h, oc);
    geodata::NumericRaster sp = overlay::sp_corn(aspect_surfaces[0], aspect_surfaces[1],
                                                 aspect_surfaces[2], weights,
                                                 oc.renormalize_weights);
    detail::write_output(cfg, "sp_corn.asc",
                         geodata::serialize_ascii_grid(sp, cfg.asc_decimals));

    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (size_t i = 0; i < sp.cells.size(); ++i) {
        if (sp.is_nodata(i)) continue;
        double v = sp.cells[i];
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
    }
    ordered_json spj;
    spj["file"] = "sp_corn.asc";
    spj["weights_variant"] = oc.weights_variant;
    spj["weights"] = {weights[0], weights[1], weights[2]};
    spj["renormalized"] = oc.renormalize_weights;
    spj["min"] = first ? nullptr : ordered_json(lo);
    spj["max"] = first ? nullptr : ordered_json(hi);
    stage["sp_corn"] = spj;

    // provenance: the exact coefficients behind every surface
    ordered_json prov;
    prov["weights_variant"] = oc.weights_variant;
    prov["weights"] = {weights[0], weights[1], weights[2]};
    prov["renormalized"] = oc.renormalize_weights;
    ordered_json paspects = ordered_json::array();
    for (const auto& aspect : h.aspects) {
        ordered_json pa;
        pa["name"] = aspect.name;
        pa["weight"] = aspect.weight;
        ordered_json subs = ordered_json::array();
        for (const auto& sub : aspect.subcriteria) {
            ordered_json ps;
            ps["name"] = sub.name;
            ps["score"] = sub.score;
            ordered_json classes = ordered_json::object();
            for (const auto& cls : sub.classes) classes[cls.label] = cls.value;
            ps["class_values"] = classes;
            subs.push_back(ps);
        }
        pa["subcriteria"] = subs;
        paspects.push_back(pa);
    }
    prov["aspects"] = paspects;
    prov["inputs"] = inputs.to_json();
    detail::write_json(cfg, "overlay_provenance.json", prov);

    stage["inputs"] = inputs.to_json();
    return stage;
}

// ---------------------------------------------------------------------------
// classify stage
// ---------------------------------------------------------------------------

inline ordered_json cmd_classify(const PipelineConfig& cfg) {
    if (!cfg.classify) throw ConfigError("config: missing 'classify' section");
    const auto& cc = *cfg.classify;
    detail::InputRegistry inputs;

    std::string sp_text;
    std::string sp_name;
    if (cc.raster) {
        sp_text = inputs.load(cfg, *cc.raster);
        sp_name = *cc.raster;
    } else {
        sp_name = "sp_corn.asc";
        std::string path = (cfg.out_dir / sp_name).string();
        sp_text = read_file(path); // produced by the overlay stage
        inputs.digests.emplace(sp_name, fnv1a64_hex(sp_text));
    }
    geodata::NumericRaster sp = geodata::parse_ascii_grid(sp_text, sp_name);

    std::vector<double> values;
    for (size_t i = 0; i < sp.cells.size(); ++i)
        if (!sp.is_nodata(i)) values.push_back(sp.cells[i]);
    if (values.empty()) throw ConfigError("classify: raster has no data cells");

    classify::BreaksResult breaks = classify::jenks_breaks(values, cc.k);
    geodata::CategoricalRaster priority = classify::classify_raster(sp, breaks);
    detail::write_output(cfg, "priority.asc", geodata::serialize_categorical_grid(priority));

    std::map<int, size_t> counts;
    for (int p = 1; p <= breaks.k; ++p) counts[p] = 0;
    for (size_t i = 0; i < priority.codes.size(); ++i)
        if (!priority.is_nodata(i)) counts[priority.codes[i]] += 1;
    const double ha_per_cell = sp.header.cellsize * sp.header.cellsize / 1e4;

    ordered_json stage;
    stage["k"] = breaks.k;
    stage["breaks"] = breaks.breaks;
    stage["sdam"] = breaks.sdam;
    stage["sdcm"] = breaks.sdcm;
    stage["gvf"] = breaks.gvf;
    stage["boundary_semantics"] =
        "right-closed: a cell equal to a break value falls in the lower-priority class";
    ordered_json classes = ordered_json::array();
    for (int p = 1; p <= breaks.k; ++p) {
        ordered_json cj;
        cj["priority"] = p;
        cj["label"] = classify::priority_label(p);
        cj["cells"] = counts[p];
        cj["hectares"] = static_cast<double>(counts[p]) * ha_per_cell;
        auto it = cc.directions.find(p);
        cj["directions"] = it != cc.directions.end() ? ordered_json(it->second)
                                                     : ordered_json::array();
        classes.push_back(cj);
    }
    stage["classes"] = classes;
    stage["inputs"] = inputs.to_json();
    detail::write_json(cfg, "classify_report.json", stage);
    return stage;
}

// ---------------------------------------------------------------------------
// full pipeline
// ---------------------------------------------------------------------------

inline ordered_json run_pipeline(const PipelineConfig& cfg) {
    ordered_json report;
    report["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    report["config"] = {{"file", cfg.config_name}, {"digest", cfg.config_digest}};
    report["seed"] = cfg.seed;
    report["strict"] = cfg.strict;

    ordered_json stages;
    stages["suitability"] =
        cfg.suitability ? cmd_suitability(cfg) : ordered_json{{"skipped", "not configured"}};
    stages["rap"] = cfg.rap ? cmd_rap(cfg) : ordered_json{{"skipped", "not configured"}};
    stages["ahp"] = cfg.ahp ? cmd_ahp(cfg) : ordered_json{{"skipped", "not configured"}};
    stages["overlay"] =
        cfg.overlay ? cmd_overlay(cfg) : ordered_json{{"skipped", "not configured"}};
    stages["classify"] =
        cfg.classify ? cmd_classify(cfg) : ordered_json{{"skipped", "not configured"}};
    report["stages"] = stages;

    detail::write_json(cfg, "run_report.json", report);
    return report;
}

} // namespace cornplan::pipeline
