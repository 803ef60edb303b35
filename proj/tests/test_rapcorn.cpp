#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cornplan/rapcorn.hpp"
#include "oracles.hpp"

using namespace cornplan;
using rap::AttributeSchema;
using rap::AttributeSpec;
using rap::GoodDirection;
using rap::ScoreMatrix;
using rap::ScoreRow;

namespace {

AttributeSchema schema_of(int count, int lo, int hi,
                          GoodDirection dir = GoodDirection::High) {
    AttributeSchema s;
    s.dimension = rap::Dimension::Ecological;
    for (int i = 0; i < count; ++i)
        s.attributes.push_back({"attr" + std::to_string(i + 1), lo, hi, dir});
    return s;
}

ScoreMatrix matrix_of(AttributeSchema schema, std::vector<ScoreRow> rows) {
    ScoreMatrix m;
    m.schema = std::move(schema);
    m.rows = std::move(rows);
    m.validate();
    return m;
}

const ScoreRow* find_row(const ScoreMatrix& m, const std::string& id) {
    for (const auto& r : m.rows)
        if (r.id == id) return &r;
    return nullptr;
}

} // namespace

TEST_CASE("add_reference_rows builds GOOD and BAD from the scale bounds") {
    auto m = matrix_of(schema_of(3, 0, 2), {{"u1", {1, 0, 2}, false}});
    auto anchored = rap::add_reference_rows(m);
    REQUIRE(anchored.rows.size() == 5);
    REQUIRE(find_row(anchored, "GOOD")->scores == std::vector<int>{2, 2, 2});
    REQUIRE(find_row(anchored, "BAD")->scores == std::vector<int>{0, 0, 0});
    REQUIRE(find_row(anchored, "GOOD")->synthetic);
}

TEST_CASE("add_reference_rows midpoint anchors floor and ceil the midpoint") {
    auto m = matrix_of(schema_of(3, 0, 3), {{"u1", {1, 2, 0}, false}});
    auto anchored = rap::add_reference_rows(m);
    REQUIRE(find_row(anchored, "MID_LOW")->scores == std::vector<int>{1, 1, 1});
    REQUIRE(find_row(anchored, "MID_HIGH")->scores == std::vector<int>{2, 2, 2});
}

TEST_CASE("add_reference_rows respects per-attribute good direction") {
    AttributeSchema s;
    s.attributes = {{"up", 0, 4, GoodDirection::High}, {"down", 0, 4, GoodDirection::Low}};
    auto m = matrix_of(s, {{"u1", {2, 2}, false}});
    auto anchored = rap::add_reference_rows(m);

    // oracle: best/worst per attribute from the direction
    std::vector<int> expected_good, expected_bad;
    for (const auto& a : s.attributes) {
        expected_good.push_back(a.good_direction == GoodDirection::High ? a.scale_max
                                                                        : a.scale_min);
        expected_bad.push_back(a.good_direction == GoodDirection::High ? a.scale_min
                                                                       : a.scale_max);
    }
    REQUIRE(find_row(anchored, "GOOD")->scores == expected_good);
    REQUIRE(find_row(anchored, "BAD")->scores == expected_bad);

    REQUIRE(find_row(anchored, "GOOD")->scores == std::vector<int>{4, 0});
    REQUIRE(find_row(anchored, "BAD")->scores == std::vector<int>{0, 4});
}

TEST_CASE("add_reference_rows rejects empty and double anchoring") {
    ScoreMatrix empty;
    empty.schema = schema_of(2, 0, 2);
    REQUIRE_THROWS_AS(rap::add_reference_rows(empty), ConfigError);
    auto anchored = rap::add_reference_rows(matrix_of(schema_of(2, 0, 2), {{"u", {1, 1}, false}}));
    REQUIRE_THROWS_AS(rap::add_reference_rows(anchored), ConfigError);
}

TEST_CASE("score matrix validation") {
    REQUIRE_THROWS_WITH(matrix_of(schema_of(2, 0, 2), {{"u", {3, 0}, false}}),
                        Catch::Matchers::ContainsSubstring("outside scale"));
    REQUIRE_THROWS_WITH(matrix_of(schema_of(2, 0, 2), {{"GOOD", {1, 1}, false}}),
                        Catch::Matchers::ContainsSubstring("reserved"));
    REQUIRE_THROWS_AS(
        matrix_of(schema_of(2, 0, 2), {{"u", {1, 1}, false}, {"u", {0, 0}, false}}),
        ConfigError);
    AttributeSchema degenerate;
    degenerate.attributes = {{"flat", 2, 2, GoodDirection::High}};
    REQUIRE_THROWS_AS(degenerate.validate(), ConfigError);
}

TEST_CASE("normalize_scores puts 1 at the good end") {
    AttributeSchema s;
    s.attributes = {{"up", 0, 4, GoodDirection::High}, {"down", 0, 4, GoodDirection::Low}};
    auto anchored = rap::add_reference_rows(matrix_of(s, {{"u1", {4, 4}, false}}));
    auto norm = rap::normalize_scores(anchored);
    REQUIRE(norm[0][0] == 1.0); // scale_max on a high attribute
    REQUIRE(norm[0][1] == 0.0); // scale_max on a low attribute
}

TEST_CASE("normalized GOOD row is all ones, BAD all zeros") {
    oracles::TestRng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        AttributeSchema s;
        int m = rng.uniform_int(2, 6);
        for (int a = 0; a < m; ++a) {
            int lo = rng.uniform_int(-3, 2);
            int hi = lo + rng.uniform_int(1, 5);
            s.attributes.push_back({"a" + std::to_string(a), lo, hi,
                                    rng.uniform(0, 1) < 0.5 ? GoodDirection::High
                                                            : GoodDirection::Low});
        }
        std::vector<ScoreRow> rows;
        for (int o = 0; o < 3; ++o) {
            ScoreRow r{"obj" + std::to_string(o), {}, false};
            for (const auto& a : s.attributes)
                r.scores.push_back(rng.uniform_int(a.scale_min, a.scale_max));
            rows.push_back(std::move(r));
        }
        auto anchored = rap::add_reference_rows(matrix_of(s, rows));
        auto norm = rap::normalize_scores(anchored);
        for (size_t i = 0; i < anchored.rows.size(); ++i) {
            for (double v : norm[i]) {
                REQUIRE(v >= 0.0);
                REQUIRE(v <= 1.0);
            }
            if (anchored.rows[i].id == "GOOD")
                for (double v : norm[i]) REQUIRE(v == 1.0);
            if (anchored.rows[i].id == "BAD")
                for (double v : norm[i]) REQUIRE(v == 0.0);
        }
    }
}

TEST_CASE("normalize requires anchors") {
    auto m = matrix_of(schema_of(2, 0, 2), {{"u", {1, 1}, false}});
    REQUIRE_THROWS_AS(rap::normalize_scores(m), ConfigError);
}

TEST_CASE("adding a duplicate object leaves other pairwise distances unchanged") {
    oracles::TestRng rng(42);
    auto base = matrix_of(schema_of(4, 0, 4), {{"a", {1, 2, 3, 4}, false},
                                               {"b", {0, 4, 2, 1}, false},
                                               {"c", {3, 3, 0, 2}, false}});
    auto extended = base;
    extended.rows.push_back({"a_copy", base.rows[0].scores, false});

    auto d_base = rap::distance_matrix(rap::normalize_scores(rap::add_reference_rows(base)));
    auto d_ext =
        rap::distance_matrix(rap::normalize_scores(rap::add_reference_rows(extended)));

    // base row order: a b c GOOD BAD MID_LOW MID_HIGH
    // ext  row order: a b c a_copy GOOD BAD MID_LOW MID_HIGH
    auto ext_of = [](size_t i) { return i < 3 ? i : i + 1; };
    for (size_t i = 0; i < d_base.n; ++i)
        for (size_t j = 0; j < d_base.n; ++j)
            REQUIRE(d_base.at(i, j) == d_ext.at(ext_of(i), ext_of(j)));
    // and the duplicate sits at distance zero of its original
    REQUIRE(d_ext.at(0, 3) == 0.0);
}

TEST_CASE("sustainability_index pins GOOD at 100 and BAD at 0 exactly") {
    oracles::TestRng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        AttributeSchema s = schema_of(rng.uniform_int(2, 6), 0, 4);
        std::vector<ScoreRow> rows;
        int n = rng.uniform_int(2, 6);
        for (int o = 0; o < n; ++o) {
            ScoreRow r{"obj" + std::to_string(o), {}, false};
            for (size_t a = 0; a < s.attributes.size(); ++a)
                r.scores.push_back(rng.uniform_int(0, 4));
            rows.push_back(std::move(r));
        }
        auto res = rap::sustainability_index(matrix_of(s, rows));
        size_t good = rows.size(), bad = rows.size() + 1;
        REQUIRE(res.row_ids[good] == "GOOD");
        REQUIRE(res.row_ids[bad] == "BAD");
        REQUIRE(res.coords[good].x == 100.0);
        REQUIRE(res.coords[good].y == 0.0);
        REQUIRE(res.coords[bad].x == 0.0);
        REQUIRE(res.coords[bad].y == 0.0);
    }
}

TEST_CASE("object scoring like GOOD lands at index 100, like BAD at 0") {
    auto m = matrix_of(schema_of(3, 0, 4), {{"top", {4, 4, 4}, false},
                                            {"bottom", {0, 0, 0}, false},
                                            {"middling", {1, 2, 3}, false}});
    auto res = rap::sustainability_index(m);
    REQUIRE(res.index.at("top") == Catch::Approx(100.0).margin(1e-9));
    REQUIRE(res.index.at("bottom") == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(res.index.at("middling") > 0.0);
    REQUIRE(res.index.at("middling") < 100.0);
}

TEST_CASE("mirror-symmetric objects land symmetric about 50") {
    auto m = matrix_of(schema_of(3, 0, 4),
                       {{"low", {1, 1, 0}, false}, {"high", {3, 3, 4}, false}});
    auto res = rap::sustainability_index(m);
    REQUIRE(res.index.at("low") + res.index.at("high") == Catch::Approx(100.0).margin(1e-6));
}

TEST_CASE("sustainability_index invariant under object and attribute reordering") {
    auto base = matrix_of(schema_of(3, 0, 4), {{"a", {1, 2, 3}, false},
                                               {"b", {4, 0, 2}, false},
                                               {"c", {2, 2, 1}, false}});
    auto res_base = rap::sustainability_index(base);

    // permute objects (c, a, b) and attributes (3rd, 1st, 2nd)
    AttributeSchema s;
    s.attributes = {base.schema.attributes[2], base.schema.attributes[0],
                    base.schema.attributes[1]};
    auto permuted = matrix_of(s, {{"c", {1, 2, 2}, false},
                                  {"a", {3, 1, 2}, false},
                                  {"b", {2, 4, 0}, false}});
    auto res_perm = rap::sustainability_index(permuted);

    for (const auto& id : {"a", "b", "c"})
        REQUIRE(res_perm.index.at(id) == Catch::Approx(res_base.index.at(id)).margin(1e-9));
}

TEST_CASE("categorize follows the index category table") {
    using rap::SustainabilityCategory;
    REQUIRE(rap::categorize(49.40) == SustainabilityCategory::LessSustainable);
    REQUIRE(rap::categorize(61.69) == SustainabilityCategory::QuiteSustainable);
    REQUIRE(rap::categorize(61.26) == SustainabilityCategory::QuiteSustainable);
    REQUIRE(rap::categorize(25.00) == SustainabilityCategory::NotSustainable);
    REQUIRE(rap::categorize(25.01) == SustainabilityCategory::LessSustainable);
    REQUIRE(rap::categorize(50.00) == SustainabilityCategory::LessSustainable);
    REQUIRE(rap::categorize(50.01) == SustainabilityCategory::QuiteSustainable);
    REQUIRE(rap::categorize(75.00) == SustainabilityCategory::QuiteSustainable);
    REQUIRE(rap::categorize(75.01) == SustainabilityCategory::VerySustainable);
    REQUIRE(rap::categorize(0.0) == SustainabilityCategory::NotSustainable);
    REQUIRE(rap::categorize(100.0) == SustainabilityCategory::VerySustainable);

    // monotone non-decreasing in the index
    oracles::TestRng rng(44);
    for (int i = 0; i < 200; ++i) {
        double a = rng.uniform(-20, 120), b = rng.uniform(-20, 120);
        if (a > b) std::swap(a, b);
        REQUIRE(static_cast<int>(rap::categorize(a)) <= static_cast<int>(rap::categorize(b)));
    }
}

TEST_CASE("leverage: an uninformative attribute has near-zero RMS") {
    // all attribute columns identical: dropping one rescales every pairwise
    // distance uniformly, which the 0-100 alignment cancels out
    auto m = matrix_of(schema_of(3, 0, 4), {{"a", {1, 1, 1}, false},
                                            {"b", {3, 3, 3}, false},
                                            {"c", {2, 2, 2}, false}});
    rap::OrdinationParams tight;
    tight.tol = 1e-12;
    tight.max_iter = 2000;
    auto report = rap::leverage(m, tight);
    REQUIRE(report.rms.size() == 3);
    for (const auto& [attr, rms] : report.rms) {
        INFO(attr);
        REQUIRE(rms < 1e-6);
    }
}

TEST_CASE("leverage: duplicated attribute columns have identical RMS") {
    auto m = matrix_of(schema_of(3, 0, 4), {{"a", {1, 2, 2}, false},
                                            {"b", {4, 0, 0}, false},
                                            {"c", {2, 3, 3}, false}});
    // attributes 2 and 3 carry identical columns
    auto report = rap::leverage(m);
    REQUIRE(std::abs(report.rms[1].second - report.rms[2].second) < 1e-9);
}

TEST_CASE("leverage equals a by-hand rerun of reduced ordinations") {
    auto m = matrix_of(schema_of(3, 0, 4), {{"a", {1, 4, 0}, false},
                                            {"b", {3, 1, 2}, false},
                                            {"c", {0, 2, 4}, false}});
    rap::OrdinationParams params;
    auto report = rap::leverage(m, params);
    auto full = rap::sustainability_index(m, params);

    for (size_t drop = 0; drop < 3; ++drop) {
        AttributeSchema s;
        std::vector<ScoreRow> rows{{"a", {}, false}, {"b", {}, false}, {"c", {}, false}};
        for (size_t a = 0; a < 3; ++a) {
            if (a == drop) continue;
            s.attributes.push_back(m.schema.attributes[a]);
            for (size_t o = 0; o < 3; ++o) rows[o].scores.push_back(m.rows[o].scores[a]);
        }
        auto reduced = rap::sustainability_index(matrix_of(s, rows), params);
        double sq = 0.0;
        for (const auto& id : {"a", "b", "c"}) {
            double diff = full.index.at(id) - reduced.index.at(id);
            sq += diff * diff;
        }
        double expected = std::sqrt(sq / 3.0);
        REQUIRE(report.rms[drop].second == Catch::Approx(expected).margin(1e-12));
    }
}

TEST_CASE("leverage rejects single-attribute matrices") {
    auto m = matrix_of(schema_of(1, 0, 4), {{"a", {1}, false}, {"b", {3}, false}});
    REQUIRE_THROWS_AS(rap::leverage(m), ConfigError);
}

TEST_CASE("monte_carlo with flip_prob 0 reproduces the baseline exactly") {
    auto m = matrix_of(schema_of(3, 0, 4), {{"a", {1, 2, 3}, false}, {"b", {4, 0, 2}, false}});
    auto baseline = rap::sustainability_index(m);
    auto report = rap::monte_carlo(m, 20, 0.0, 12345);
    for (const auto& [id, st] : report.objects) {
        REQUIRE(st.stddev == 0.0);
        REQUIRE(st.mean == Catch::Approx(baseline.index.at(id)).margin(1e-12));
        REQUIRE(st.p2_5 == st.p97_5);
    }
}

TEST_CASE("monte_carlo is reproducible from its seed") {
    auto m = matrix_of(schema_of(3, 0, 4), {{"a", {1, 2, 3}, false}, {"b", {4, 0, 2}, false}});
    auto r1 = rap::monte_carlo(m, 50, 0.3, 987);
    auto r2 = rap::monte_carlo(m, 50, 0.3, 987);
    REQUIRE(r1.objects.size() == r2.objects.size());
    for (size_t i = 0; i < r1.objects.size(); ++i) {
        REQUIRE(r1.objects[i].first == r2.objects[i].first);
        REQUIRE(r1.objects[i].second.mean == r2.objects[i].second.mean);
        REQUIRE(r1.objects[i].second.stddev == r2.objects[i].second.stddev);
        REQUIRE(r1.objects[i].second.p2_5 == r2.objects[i].second.p2_5);
        REQUIRE(r1.objects[i].second.p97_5 == r2.objects[i].second.p97_5);
    }
    auto r3 = rap::monte_carlo(m, 50, 0.3, 988);
    bool any_diff = false;
    for (size_t i = 0; i < r1.objects.size(); ++i)
        if (r1.objects[i].second.mean != r3.objects[i].second.mean) any_diff = true;
    REQUIRE(any_diff);
}

TEST_CASE("monte_carlo with flip_prob 1 matches exhaustive enumeration") {
    // one object, two attributes, scores one step inside the scale: every
    // trial moves each score +-1, four equally likely outcomes
    auto m = matrix_of(schema_of(2, 0, 2), {{"only", {1, 1}, false}});

    double mean_exact = 0.0;
    std::vector<double> outcome_indices;
    for (int d1 : {-1, 1}) {
        for (int d2 : {-1, 1}) {
            auto variant = m;
            variant.rows[0].scores = {1 + d1, 1 + d2};
            auto res = rap::sustainability_index(variant);
            outcome_indices.push_back(res.index.at("only"));
        }
    }
    for (double v : outcome_indices) mean_exact += v;
    mean_exact /= 4.0;
    double var_exact = 0.0;
    for (double v : outcome_indices) var_exact += (v - mean_exact) * (v - mean_exact);
    var_exact /= 4.0;

    const int trials = 400;
    auto report = rap::monte_carlo(m, trials, 1.0, 2718);
    double sigma = std::sqrt(var_exact / trials);
    REQUIRE(report.objects[0].second.mean ==
            Catch::Approx(mean_exact).margin(3.0 * sigma + 1e-12));
    REQUIRE_THROWS_AS(rap::monte_carlo(m, 0, 0.5, 1), ConfigError);
    REQUIRE_THROWS_AS(rap::monte_carlo(m, 5, 1.5, 1), ConfigError);
}

TEST_CASE("schema JSON and score CSV loaders") {
    auto schema = rap::parse_schema_json(R"({
        "dimension": "economic",
        "attributes": [
            {"name": "profit", "scale_min": 0, "scale_max": 3, "good_direction": "high"},
            {"name": "debt", "scale_min": 0, "scale_max": 2, "good_direction": "low"}
        ]})");
    REQUIRE(schema.dimension == rap::Dimension::Economic);
    REQUIRE(schema.attributes[1].good_direction == GoodDirection::Low);

    auto matrix = rap::parse_scores_csv("id,debt,profit\nfarm1,2,3\nfarm2,0,1\n", schema);
    REQUIRE(matrix.rows.size() == 2);
    // columns matched by name, stored in schema order
    REQUIRE(matrix.rows[0].scores == std::vector<int>{3, 2});

    REQUIRE_THROWS_AS(rap::parse_scores_csv("id,profit\nf,1\n", schema), ConfigError);
    REQUIRE_THROWS_AS(rap::parse_scores_csv("id,profit,debt\nf,9,0\n", schema), ConfigError);
    REQUIRE_THROWS_AS(rap::parse_schema_json("{\"dimension\": \"lunar\", \"attributes\": []}"),
                      ConfigError);
}
