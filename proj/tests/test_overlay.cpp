#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cornplan/overlay.hpp"
#include "oracles.hpp"

using namespace cornplan;
using overlay::AspectSurface;
using overlay::SubcriterionLayer;

namespace {

geodata::GridHeader header_1x1() { return {1, 1, 0, 0, 100, -9999}; }

SubcriterionLayer layer_1x1(const std::string& name, const std::string& label, double value) {
    SubcriterionLayer layer;
    layer.name = name;
    layer.raster.header = header_1x1();
    layer.raster.codes = {1};
    layer.raster.legend.entries = {{1, label}};
    layer.class_values = {{label, value}};
    return layer;
}

AspectSurface constant_surface(const std::string& name, int ncols, int nrows, double value) {
    AspectSurface s;
    s.name = name;
    s.raster.header = {ncols, nrows, 0, 0, 100, -9999};
    s.raster.cells.assign(static_cast<size_t>(ncols) * nrows, value);
    return s;
}

} // namespace

TEST_CASE("aspect_score reproduces the ecological best-case cell") {
    std::vector<SubcriterionLayer> layers = {
        layer_1x1("Fertilization", "Great Fertilization", 0.72),
        layer_1x1("Use of Organic Ingredients", "Many Use", 0.73),
        layer_1x1("Soil Organic C Nutrient Suitability", "Suitable", 0.75)};
    std::map<std::string, double> scores = {{"Fertilization", 0.47},
                                            {"Use of Organic Ingredients", 0.21},
                                            {"Soil Organic C Nutrient Suitability", 0.32}};
    auto surface = overlay::aspect_score("Ecological", layers, scores);
    REQUIRE(surface.raster.cells[0] ==
            Catch::Approx(0.47 * 0.72 + 0.21 * 0.73 + 0.32 * 0.75).margin(1e-15));
    REQUIRE(surface.raster.cells[0] == Catch::Approx(0.7317).margin(1e-12));
}

TEST_CASE("aspect_score with all class values zero is a zero surface") {
    std::vector<SubcriterionLayer> layers = {layer_1x1("a", "x", 0.0),
                                             layer_1x1("b", "y", 0.0)};
    auto surface =
        overlay::aspect_score("zeros", layers, {{"a", 0.5}, {"b", 0.5}});
    REQUIRE(surface.raster.cells[0] == 0.0);
}

TEST_CASE("aspect_score with a single unit-score layer is the class lookup") {
    oracles::TestRng rng(21);
    SubcriterionLayer layer;
    layer.name = "solo";
    layer.raster.header = {8, 8, 0, 0, 50, -9999};
    layer.raster.legend.entries = {{1, "low"}, {2, "mid"}, {3, "high"}};
    layer.class_values = {{"low", 0.11}, {"mid", 0.47}, {"high", 0.91}};
    for (int i = 0; i < 64; ++i) layer.raster.codes.push_back(rng.uniform_int(1, 3));

    auto surface = overlay::aspect_score("identity", {layer}, {{"solo", 1.0}});
    for (int i = 0; i < 64; ++i)
        REQUIRE(surface.raster.cells[i] ==
                layer.class_values.at(layer.raster.legend.entries.at(layer.raster.codes[i])));
}

TEST_CASE("aspect_score propagates nodata from any layer") {
    auto a = layer_1x1("a", "x", 0.5);
    auto b = layer_1x1("b", "y", 0.5);
    a.raster.codes = {-9999};
    auto surface = overlay::aspect_score("holes", {a, b}, {{"a", 0.6}, {"b", 0.4}});
    REQUIRE(surface.raster.is_nodata(0));
}

TEST_CASE("aspect_score validates alignment and scores") {
    auto a = layer_1x1("a", "x", 0.5);
    auto b = layer_1x1("b", "y", 0.5);
    b.raster.header.cellsize = 60;
    REQUIRE_THROWS_WITH(overlay::aspect_score("bad", {a, b}, {{"a", 0.5}, {"b", 0.5}}),
                        Catch::Matchers::ContainsSubstring("cellsize"));
    b.raster.header.cellsize = 100;
    REQUIRE_THROWS_WITH(overlay::aspect_score("bad", {a, b}, {{"a", 0.5}}),
                        Catch::Matchers::ContainsSubstring("no subcriterion score"));
    b.class_values.clear();
    REQUIRE_THROWS_AS(overlay::aspect_score("bad", {a, b}, {{"a", 0.5}, {"b", 0.5}}),
                      ConfigError);
}

TEST_CASE("aspect_score cells stay inside the convex class-value bounds") {
    oracles::TestRng rng(22);
    std::vector<SubcriterionLayer> layers;
    std::map<std::string, double> scores;
    double lo_bound = 0.0, hi_bound = 0.0;
    for (int k = 0; k < 3; ++k) {
        SubcriterionLayer layer;
        layer.name = "sub" + std::to_string(k);
        layer.raster.header = {10, 10, 0, 0, 50, -9999};
        double lo = rng.uniform(0.0, 0.3), hi = rng.uniform(0.5, 1.0);
        layer.raster.legend.entries = {{1, "lo"}, {2, "hi"}};
        layer.class_values = {{"lo", lo}, {"hi", hi}};
        for (int i = 0; i < 100; ++i) layer.raster.codes.push_back(rng.uniform_int(1, 2));
        double score = 1.0 / 3.0;
        scores[layer.name] = score;
        lo_bound += score * lo;
        hi_bound += score * hi;
        layers.push_back(std::move(layer));
    }
    auto surface = overlay::aspect_score("bounds", layers, scores);
    for (double v : surface.raster.cells) {
        REQUIRE(v >= lo_bound - 1e-12);
        REQUIRE(v <= hi_bound + 1e-12);
    }
}

TEST_CASE("sp_corn weighted combination matches hand arithmetic") {
    auto eco = constant_surface("eco", 1, 1, 0.55);
    auto econ = constant_surface("econ", 1, 1, 0.49);
    auto soc = constant_surface("soc", 1, 1, 0.40);
    auto sp = overlay::sp_corn(eco, econ, soc, {0.46, 0.32, 0.21});
    double expected = 0.46 * 0.55 + 0.32 * 0.49 + 0.21 * 0.40;
    REQUIRE(sp.cells[0] == Catch::Approx(expected).margin(1e-15));
    REQUIRE(sp.cells[0] == Catch::Approx(0.4938).margin(1e-12));
    // inside the SP value range the composite is reported to span
    REQUIRE(sp.cells[0] >= 0.36);
    REQUIRE(sp.cells[0] <= 0.49);
}

TEST_CASE("sp_corn of equal surfaces with weights summing to 1 is that value") {
    auto eco = constant_surface("eco", 4, 3, 0.42);
    auto econ = constant_surface("econ", 4, 3, 0.42);
    auto soc = constant_surface("soc", 4, 3, 0.42);
    auto sp = overlay::sp_corn(eco, econ, soc, {0.5, 0.25, 0.25});
    for (double v : sp.cells) REQUIRE(v == Catch::Approx(0.42).margin(1e-15));
}

TEST_CASE("sp_corn with a single unit weight copies that surface") {
    oracles::TestRng rng(23);
    auto eco = constant_surface("eco", 5, 5, 0.0);
    auto econ = constant_surface("econ", 5, 5, 0.0);
    auto soc = constant_surface("soc", 5, 5, 0.0);
    for (int i = 0; i < 25; ++i) {
        eco.raster.cells[i] = rng.uniform(0.3, 0.6);
        econ.raster.cells[i] = rng.uniform(0.3, 0.6);
        soc.raster.cells[i] = rng.uniform(0.3, 0.6);
    }
    auto sp = overlay::sp_corn(eco, econ, soc, {1.0, 0.0, 0.0});
    REQUIRE(sp.cells == eco.raster.cells);
}

TEST_CASE("sp_corn scales linearly with the input surfaces") {
    oracles::TestRng rng(24);
    auto eco = constant_surface("eco", 6, 6, 0.0);
    auto econ = constant_surface("econ", 6, 6, 0.0);
    auto soc = constant_surface("soc", 6, 6, 0.0);
    for (int i = 0; i < 36; ++i) {
        eco.raster.cells[i] = rng.uniform(0.1, 0.9);
        econ.raster.cells[i] = rng.uniform(0.1, 0.9);
        soc.raster.cells[i] = rng.uniform(0.1, 0.9);
    }
    auto base = overlay::sp_corn(eco, econ, soc, {0.46, 0.32, 0.21});
    auto doubled = eco;
    auto doubled_econ = econ;
    auto doubled_soc = soc;
    for (int i = 0; i < 36; ++i) {
        doubled.raster.cells[i] *= 2.0;
        doubled_econ.raster.cells[i] *= 2.0;
        doubled_soc.raster.cells[i] *= 2.0;
    }
    auto scaled = overlay::sp_corn(doubled, doubled_econ, doubled_soc, {0.46, 0.32, 0.21});
    for (int i = 0; i < 36; ++i) REQUIRE(scaled.cells[i] == 2.0 * base.cells[i]);
}

TEST_CASE("sp_corn nodata mask is the union of input masks") {
    auto eco = constant_surface("eco", 3, 1, 0.5);
    auto econ = constant_surface("econ", 3, 1, 0.5);
    auto soc = constant_surface("soc", 3, 1, 0.5);
    eco.raster.cells[0] = -9999;
    soc.raster.cells[2] = -9999;
    auto sp = overlay::sp_corn(eco, econ, soc, {0.34, 0.33, 0.33});
    REQUIRE(sp.is_nodata(0));
    REQUIRE_FALSE(sp.is_nodata(1));
    REQUIRE(sp.is_nodata(2));
}

TEST_CASE("sp_corn weight-sum contract") {
    auto eco = constant_surface("eco", 1, 1, 0.5);
    auto econ = constant_surface("econ", 1, 1, 0.5);
    auto soc = constant_surface("soc", 1, 1, 0.5);
    REQUIRE_THROWS_WITH(overlay::sp_corn(eco, econ, soc, {0.5, 0.2, 0.1}),
                        Catch::Matchers::ContainsSubstring("outside"));
    REQUIRE_THROWS_AS(overlay::sp_corn(eco, econ, soc, {1.2, -0.1, -0.1}), ConfigError);
    // the published equation weights sum to 0.99 and must pass unrenormalized
    REQUIRE_NOTHROW(overlay::sp_corn(eco, econ, soc, {0.46, 0.32, 0.21}));

    SECTION("renormalization rescales to sum 1") {
        auto raw = overlay::sp_corn(eco, econ, soc, {0.46, 0.32, 0.21});
        auto renorm = overlay::sp_corn(eco, econ, soc, {0.46, 0.32, 0.21}, true);
        REQUIRE(raw.cells[0] == Catch::Approx(0.5 * 0.99).margin(1e-15));
        REQUIRE(renorm.cells[0] == Catch::Approx(0.5).margin(1e-15));
    }
}

TEST_CASE("sp_corn alignment check") {
    auto eco = constant_surface("eco", 2, 2, 0.5);
    auto econ = constant_surface("econ", 2, 2, 0.5);
    auto soc = constant_surface("soc", 2, 3, 0.5);
    REQUIRE_THROWS_WITH(overlay::sp_corn(eco, econ, soc, {0.4, 0.3, 0.3}),
                        Catch::Matchers::ContainsSubstring("nrows"));
}
