// cornplan — land-use MCDA toolkit for sustainable corn farming area
// planning: FAO suitability matching, RAP-Corn ordination, AHP weighting,
// weighted raster overlay and natural-breaks prioritization.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cornplan/pipeline.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "pipeline config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", opts.seed, "random seed (overrides config)")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_flag("--strict", opts.strict, "fail on consistency-ratio violations");
}

cornplan::pipeline::PipelineConfig make_config(const CommonOpts& opts) {
    auto cfg = cornplan::pipeline::load_config(opts.config_path);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.seed_set) cfg.seed = opts.seed;
    if (opts.strict) cfg.strict = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cornplan — multicriteria sustainable farming area planning toolkit"};
    app.set_version_flag("--version",
                         std::string(cornplan::kToolName) + " " + cornplan::kToolVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* suitability =
        app.add_subcommand("suitability", "FAO land suitability matching and area summary");
    CLI::App* rap = app.add_subcommand("rap", "RAP-Corn sustainability appraisal per dimension");
    CLI::App* ahp = app.add_subcommand("ahp", "AHP weights, consistency and coefficients");
    CLI::App* overlay =
        app.add_subcommand("overlay", "S-aspect surfaces and the SP-Corn composite");
    CLI::App* classify =
        app.add_subcommand("classify", "natural-breaks priority classification");
    CLI::App* pipeline = app.add_subcommand("pipeline", "run every stage in order");
    for (CLI::App* cmd : {suitability, rap, ahp, overlay, classify, pipeline})
        add_common(cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = make_config(opts);
        cornplan::pipeline::ordered_json summary;
        if (suitability->parsed()) {
            summary = cornplan::pipeline::cmd_suitability(cfg);
            std::cout << "suitability: " << summary["units"].size() << " units evaluated\n";
        } else if (rap->parsed()) {
            summary = cornplan::pipeline::cmd_rap(cfg);
            for (const auto& dim : summary["dimensions"]) {
                std::cout << "rap: " << dim["name"].get<std::string>() << ":";
                for (const auto& [id, value] : dim["index"].items())
                    std::cout << ' ' << id << '=' << value.get<double>();
                std::cout << '\n';
            }
        } else if (ahp->parsed()) {
            summary = cornplan::pipeline::cmd_ahp(cfg);
            std::cout << "ahp: " << summary["coefficients"].size()
                      << " coefficients compiled\n";
        } else if (overlay->parsed()) {
            summary = cornplan::pipeline::cmd_overlay(cfg);
            std::cout << "overlay: sp_corn.asc written, range ["
                      << summary["sp_corn"]["min"].dump() << ", "
                      << summary["sp_corn"]["max"].dump() << "]\n";
        } else if (classify->parsed()) {
            summary = cornplan::pipeline::cmd_classify(cfg);
            std::cout << "classify: gvf = " << summary["gvf"].get<double>() << ", breaks = "
                      << summary["breaks"].dump() << '\n';
        } else if (pipeline->parsed()) {
            summary = cornplan::pipeline::run_pipeline(cfg);
            std::cout << "pipeline: run_report.json written to " << cfg.out_dir.string()
                      << '\n';
        }
        return 0;
    } catch (const cornplan::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const cornplan::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const cornplan::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
