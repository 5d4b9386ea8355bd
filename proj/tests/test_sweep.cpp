// Tests for parameter sweeps, figure presets and CSV serialization.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "resq/sweep.hpp"

using namespace resq;
using Catch::Approx;

namespace {

const SweepRow* find_row(const SweepResult& s, double first_varied) {
    for (const auto& row : s.rows)
        if (row.varied[0] == first_varied) return &row;
    return nullptr;
}

}  // namespace

TEST_CASE("axis ranges are inclusive and validated") {
    const AxisSpec a = AxisSpec::range("d_human", 0.6, 3.0, 0.15);
    REQUIRE(a.values.size() == 17);
    CHECK(a.values.front() == Approx(0.6).margin(1e-12));
    CHECK(a.values.back() == Approx(3.0).margin(1e-12));
    CHECK_THROWS_AS(AxisSpec::range("x", 0.0, 1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(AxisSpec::range("x", 0.0, 1.0, -0.5), ValidationError);
    CHECK_THROWS_AS(AxisSpec::range("x", 2.0, 1.0, 0.5), ValidationError);
}

TEST_CASE("one-axis sweep evaluates each point exactly like the closed form") {
    GridSpec spec;
    spec.base = reference_params();
    spec.axes = {{"p_t", {0.1, 0.2, 0.35}}};
    const SweepResult s = grid_sweep(spec);

    REQUIRE(s.columns == std::vector<std::string>{"p_t"});
    REQUIRE(s.rows.size() == 3);
    CHECK(s.errors.empty());
    for (const auto& row : s.rows) {
        ScenarioParams p = reference_params();
        p.p_t = row.varied[0];
        const ResponsibilityReport r = responsibility(p);
        CHECK(row.resp == r.resp);
        CHECK(row.h_x == r.h_x);
        CHECK(row.h_y == r.h_y);
        CHECK(row.h_x_given_y == r.h_x_given_y);
    }
}

TEST_CASE("two-axis sweep walks the grid in row-major order") {
    GridSpec spec;
    spec.base = reference_params();
    spec.axes = {{"d_human", {1.0, 2.0}}, {"d_automation", {3.0, 4.0}}};
    const SweepResult s = grid_sweep(spec);
    REQUIRE(s.columns == (std::vector<std::string>{"d_human", "d_automation"}));
    REQUIRE(s.rows.size() == 4);
    const double expect[4][2] = {{1.0, 3.0}, {1.0, 4.0}, {2.0, 3.0}, {2.0, 4.0}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(s.rows[i].varied[0] == expect[i][0]);
        CHECK(s.rows[i].varied[1] == expect[i][1]);
    }
}

TEST_CASE("sweep parameter names cover the scenario surface and reject junk") {
    GridSpec spec;
    spec.base = reference_params();
    for (const char* name : {"p_t", "d_human", "d_automation", "v_ratio_automation",
                             "v_ratio_human", "beta_automation", "beta_human_base"}) {
        spec.axes = {{name, {0.5}}};
        CHECK_NOTHROW(grid_sweep(spec));
    }
    spec.axes = {{"d_robot", {1.0}}};
    CHECK_THROWS_AS(grid_sweep(spec), ValidationError);

    spec.axes = {};
    CHECK_THROWS_AS(grid_sweep(spec), ValidationError);
    spec.axes = {{"p_t", {0.2}}, {"d_human", {1.0}}, {"d_automation", {1.0}}};
    CHECK_THROWS_AS(grid_sweep(spec), ValidationError);
    spec.axes = {{"p_t", {}}};
    CHECK_THROWS_AS(grid_sweep(spec), ValidationError);
}

TEST_CASE("invalid grid points become error records, not failures") {
    GridSpec spec;
    spec.base = reference_params();
    spec.axes = {{"d_human", {-1.0, 2.0}}};
    const SweepResult s = grid_sweep(spec);
    REQUIRE(s.rows.size() == 1);
    REQUIRE(s.errors.size() == 1);
    CHECK(s.rows[0].varied[0] == 2.0);
    CHECK(s.errors[0].find("d_human=-1") != std::string::npos);
}

TEST_CASE("ratio sweep anchors one sensitivity and scales the other") {
    const std::vector<double> ratios{0.5, 1.0, 3.0};

    const SweepResult human = ratio_sweep(ratios, {AnchorWhich::human, 2.0}, reference_params());
    REQUIRE(human.columns == (std::vector<std::string>{"r", "d_human", "d_automation"}));
    REQUIRE(human.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(human.rows[i].varied[1] == 2.0);
        CHECK(human.rows[i].varied[2] == Approx(2.0 * ratios[i]).margin(1e-15));
        ScenarioParams p = reference_params();
        p.d_human = 2.0;
        p.d_automation = 2.0 * ratios[i];
        CHECK(human.rows[i].resp == responsibility(p).resp);
    }

    const SweepResult autom =
        ratio_sweep(ratios, {AnchorWhich::automation, 2.0}, reference_params());
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(autom.rows[i].varied[2] == 2.0);
        CHECK(autom.rows[i].varied[1] == Approx(2.0 / ratios[i]).margin(1e-15));
    }

    // r = 0 is recorded as a per-point error on the automation anchor
    const SweepResult bad = ratio_sweep({0.0}, {AnchorWhich::automation, 2.0}, reference_params());
    CHECK(bad.rows.empty());
    CHECK(bad.errors.size() == 1);
}

TEST_CASE("criterion-mismatch sweep scales the human base criterion") {
    const SweepResult s = beta_mismatch_sweep({0.5, 1.0, 2.0}, 3.0, reference_params());
    REQUIRE(s.columns == (std::vector<std::string>{"beta_ratio", "beta_human_base"}));
    REQUIRE(s.rows.size() == 3);

    ScenarioParams preset = reference_params();
    preset.d_automation = 3.0 * preset.d_human;  // r scales relative to the base human d'
    const double beta_a = automation_beta(preset);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(s.rows[i].varied[1] == Approx(s.rows[i].varied[0] * beta_a).epsilon(1e-15));
        ScenarioParams p = preset;
        p.beta_human_base_override = s.rows[i].varied[1];
        CHECK(s.rows[i].resp == responsibility(p).resp);
    }
    CHECK_THROWS_AS(beta_mismatch_sweep({1.0}, 0.0, reference_params()), ValidationError);
}

TEST_CASE("figure presets: grids, shapes and frozen anchor values") {
    const std::vector<double> grid = default_d_grid();
    REQUIRE(grid.size() == 17);
    CHECK(grid[0] == 0.6);
    CHECK(grid[10] == 2.1);
    CHECK(grid[16] == 3.0);

    const SweepResult fig4 = fig4_sweep();
    CHECK(fig4.columns == (std::vector<std::string>{"d_human", "d_automation"}));
    REQUIRE(fig4.rows.size() == 289);
    CHECK(fig4.errors.empty());

    const SweepResult fig5 = fig5_sweep();
    CHECK(fig5.columns == (std::vector<std::string>{"r", "d_human", "d_automation"}));
    REQUIRE(fig5.rows.size() == 289);
    for (const auto& row : fig5.rows)
        CHECK(row.varied[0] == row.varied[2] / row.varied[1]);

    const std::vector<double> ratios = default_beta_ratio_grid();
    REQUIRE(ratios.size() == 17);
    CHECK(ratios[0] == Approx(0.01).epsilon(1e-15));
    CHECK(ratios[4] == 0.1);
    CHECK(ratios[8] == 1.0);
    CHECK(ratios[12] == 10.0);
    CHECK(ratios[16] == Approx(100.0).epsilon(1e-15));
}

TEST_CASE("criterion-mismatch presets match their frozen values") {
    const SweepResult a = fig6_sweep('a');
    const SweepResult b = fig6_sweep('b');
    const SweepResult c = fig6_sweep('c');
    REQUIRE(a.rows.size() == 17);
    REQUIRE(b.rows.size() == 17);
    REQUIRE(c.rows.size() == 17);

    const double frozen_b[][2] = {
        {0.1, 0.586256467113686}, {1.0, 0.028440233642857}, {10.0, 0.438912140120817}};
    const double frozen_c[][2] = {
        {0.1, 0.931815483572557}, {1.0, 0.420398706966313}, {10.0, 0.693498951073671}};
    for (const auto& [ratio, want] : frozen_b) {
        const SweepRow* row = find_row(b, ratio);
        REQUIRE(row != nullptr);
        CHECK(row->resp == Approx(want).margin(1e-11));
    }
    for (const auto& [ratio, want] : frozen_c) {
        const SweepRow* row = find_row(c, ratio);
        REQUIRE(row != nullptr);
        CHECK(row->resp == Approx(want).margin(1e-11));
    }

    // Human responsibility stays high across the whole mismatch grid, with
    // the tightest pinch at the window edges.
    double min_full = 1.0;
    double min_window = 1.0;  // beta ratios restricted to [0.1, 10]
    for (const auto& row : a.rows) {
        min_full = std::min(min_full, row.resp);
        const double ratio = row.varied[0];
        if (ratio >= 0.1 - 1e-12 && ratio <= 10.0 + 1e-9) {
            min_window = std::min(min_window, row.resp);
        }
    }
    CHECK(min_full == Approx(0.90488497222826764).margin(1e-11));
    CHECK(min_window == Approx(0.9200475556298521).margin(1e-11));
    CHECK(min_full > 0.8);

    CHECK_THROWS_AS(fig6_sweep('d'), ValidationError);
}

TEST_CASE("number formatting: shortest faithful decimal, 12-digit cap") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(10.0) == "10");
    CHECK(format_number(100.0) == "100");
    CHECK(format_number(0.15) == "0.15");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(1e-9) == "1e-09");
    CHECK(format_number(1e22) == "1e+22");
    // needs 17 digits to round-trip, so the 12-digit fallback applies
    CHECK(format_number(8.0 / 3.0) == "2.66666666667");

    // everything below the cap round-trips exactly
    for (double v : {0.6, 2.85, 3.0, 0.01, 123.456, 7.5e-3}) {
        const std::string s = format_number(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("CSV layout and determinism") {
    GridSpec spec;
    spec.base = reference_params();
    spec.axes = {{"p_t", {0.2}}};
    const SweepResult s = grid_sweep(spec);
    const std::string csv = to_csv(s);

    const std::string expected = "p_t,resp,h_x,h_y,h_x_given_y\n0.2," +
                                 format_number(s.rows[0].resp) + "," +
                                 format_number(s.rows[0].h_x) + "," +
                                 format_number(s.rows[0].h_y) + "," +
                                 format_number(s.rows[0].h_x_given_y) + "\n";
    CHECK(csv == expected);
    CHECK(csv.find('\r') == std::string::npos);      // LF only
    CHECK(csv.back() == '\n');                       // trailing newline
    CHECK(csv.substr(0, 4) == "p_t,");

    // byte-identical across repeated evaluation
    CHECK(to_csv(fig4_sweep()) == to_csv(fig4_sweep()));
    const SweepResult again = grid_sweep(spec);
    CHECK(to_csv(again) == csv);
}
