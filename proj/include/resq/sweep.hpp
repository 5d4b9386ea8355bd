#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "resq/aided_decision.hpp"
#include "resq/errors.hpp"

namespace resq {

// One swept parameter: a ScenarioParams field name plus the values to visit.
struct AxisSpec {
    std::string name;
    std::vector<double> values;

    static AxisSpec range(std::string name, double start, double stop, double step) {
        if (!(step > 0.0)) throw ValidationError("AxisSpec: step must be > 0");
        if (stop < start) throw ValidationError("AxisSpec: stop must be >= start");
        AxisSpec axis{std::move(name), {}};
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        axis.values.reserve(count);
        for (std::size_t k = 0; k < count; ++k) axis.values.push_back(start + k * step);
        return axis;
    }
};

struct GridSpec {
    std::vector<AxisSpec> axes;  // 1 or 2
    ScenarioParams base;
};

struct SweepRow {
    std::vector<double> varied;  // aligned with SweepResult::columns
    double resp;
    double h_x;
    double h_y;
    double h_x_given_y;
};

struct SweepResult {
    std::vector<std::string> columns;  // names of the varied values
    std::vector<SweepRow> rows;
    std::vector<std::string> errors;  // row-level failures, sweep continues past them
};

namespace detail {

inline void set_param(ScenarioParams& p, const std::string& name, double value) {
    if (name == "p_t") p.p_t = value;
    else if (name == "d_human") p.d_human = value;
    else if (name == "d_automation") p.d_automation = value;
    else if (name == "v_ratio_automation") p.v_ratio_automation = value;
    else if (name == "v_ratio_human") p.v_ratio_human = value;
    else if (name == "beta_automation") p.beta_automation_override = value;
    else if (name == "beta_human_base") p.beta_human_base_override = value;
    else throw ValidationError("unknown sweep parameter '" + name + "'");
}

inline void append_point(SweepResult& result, const ScenarioParams& point,
                         std::vector<double> varied) {
    try {
        const ResponsibilityReport r = responsibility(point);
        result.rows.push_back({std::move(varied), r.resp, r.h_x, r.h_y, r.h_x_given_y});
    } catch (const Error& e) {
        std::string where;
        for (std::size_t i = 0; i < varied.size(); ++i)
            where += (i ? "," : "") + result.columns[i] + "=" + std::to_string(varied[i]);
        result.errors.push_back(where + ": " + e.what());
    }
}

}  // namespace detail

// Evaluate every point of a 1- or 2-axis grid in row-major axis order.
// Invalid points become error records, not failures.
inline SweepResult grid_sweep(const GridSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw ValidationError("grid_sweep: specify 1 or 2 axes");
    for (const auto& axis : spec.axes) {
        if (axis.values.empty())
            throw ValidationError("grid_sweep: axis '" + axis.name + "' has no values");
        ScenarioParams probe = spec.base;  // reject unknown names up front
        detail::set_param(probe, axis.name, axis.values.front());
    }

    SweepResult result;
    for (const auto& axis : spec.axes) result.columns.push_back(axis.name);

    const std::size_t inner = spec.axes.size() == 2 ? spec.axes[1].values.size() : 1;
    const std::size_t total = spec.axes[0].values.size() * inner;
    for (std::size_t i = 0; i < total; ++i) {
        ScenarioParams point = spec.base;
        std::vector<double> varied;
        varied.reserve(spec.axes.size());
        const double v0 = spec.axes[0].values[i / inner];
        detail::set_param(point, spec.axes[0].name, v0);
        varied.push_back(v0);
        if (spec.axes.size() == 2) {
            const double v1 = spec.axes[1].values[i % inner];
            detail::set_param(point, spec.axes[1].name, v1);
            varied.push_back(v1);
        }
        detail::append_point(result, point, std::move(varied));
    }
    return result;
}

// Which sensitivity an R-sweep holds fixed.
enum class AnchorWhich { human, automation };

struct RatioAnchor {
    AnchorWhich which = AnchorWhich::human;
    double value = 1.0;
};

// Sweep the sensitivity ratio R = d_automation/d_human, holding the anchored
// sensitivity fixed and scaling the other.
inline SweepResult ratio_sweep(const std::vector<double>& r_values, RatioAnchor anchor,
                               const ScenarioParams& base) {
    SweepResult result;
    result.columns = {"r", "d_human", "d_automation"};
    for (double r : r_values) {
        ScenarioParams point = base;
        if (anchor.which == AnchorWhich::human) {
            point.d_human = anchor.value;
            point.d_automation = anchor.value * r;
        } else {
            point.d_automation = anchor.value;
            point.d_human = r > 0.0 ? anchor.value / r : -1.0;  // <= 0 rejected per point
        }
        detail::append_point(result, point, {r, point.d_human, point.d_automation});
    }
    return result;
}

// Sweep the divergence between the human's and the automation's response
// criteria at a fixed sensitivity ratio r (d_automation = r * base.d_human):
// each row sets the human's unaided criterion to ratio * beta_automation.
inline SweepResult beta_mismatch_sweep(const std::vector<double>& beta_ratio_values, double r,
                                       const ScenarioParams& base) {
    if (!(r > 0.0)) throw ValidationError("beta_mismatch_sweep: r must be > 0");
    ScenarioParams preset = base;
    preset.d_automation = r * base.d_human;

    SweepResult result;
    result.columns = {"beta_ratio", "beta_human_base"};
    for (double ratio : beta_ratio_values) {
        ScenarioParams point = preset;
        double beta_base = -1.0;
        try {
            beta_base = ratio * automation_beta(point);
            point.beta_human_base_override = beta_base;
        } catch (const Error& e) {
            result.errors.push_back("beta_ratio=" + std::to_string(ratio) + ": " + e.what());
            continue;
        }
        detail::append_point(result, point, {ratio, beta_base});
    }
    return result;
}

// ---- figure presets -------------------------------------------------------

inline ScenarioParams reference_params() {
    ScenarioParams p{};
    p.p_t = 0.2;
    p.d_human = 2.0;
    p.d_automation = 2.0;
    return p;
}

// d' in [0.6, 3.0] step 0.15 (17 points per axis), as exact decimals
inline std::vector<double> default_d_grid() {
    std::vector<double> values;
    values.reserve(17);
    for (int k = 0; k <= 16; ++k) values.push_back((60 + 15 * k) / 100.0);
    return values;
}

// responsibility surface over (d_human, d_automation)
inline SweepResult fig4_sweep() {
    GridSpec spec;
    spec.base = reference_params();
    spec.axes = {{"d_human", default_d_grid()}, {"d_automation", default_d_grid()}};
    return grid_sweep(spec);
}

// the same surface keyed by the sensitivity ratio R = d_automation/d_human
inline SweepResult fig5_sweep() {
    SweepResult result;
    result.columns = {"r", "d_human", "d_automation"};
    const auto grid = default_d_grid();
    for (double dh : grid)
        for (double da : grid) {
            ScenarioParams point = reference_params();
            point.d_human = dh;
            point.d_automation = da;
            detail::append_point(result, point, {da / dh, dh, da});
        }
    return result;
}

// 17 log-spaced criterion ratios over [1e-2, 1e2]; 0.1, 1 and 10 are exact
// grid points
inline std::vector<double> default_beta_ratio_grid() {
    std::vector<double> values;
    values.reserve(17);
    for (int k = 0; k <= 16; ++k) values.push_back(std::pow(10.0, (k - 8) / 4.0));
    return values;
}

// criterion-mismatch presets at R = 1/3, 3 and 1.5
inline SweepResult fig6_sweep(char which) {
    ScenarioParams base = reference_params();
    double r = 0.0;
    switch (which) {
        case 'a': base.d_human = 2.7; r = 1.0 / 3.0; break;
        case 'b': base.d_human = 0.9; r = 3.0; break;
        case 'c': base.d_human = 0.8; r = 1.5; break;
        default: throw ValidationError("fig6_sweep: variant must be 'a', 'b' or 'c'");
    }
    return beta_mismatch_sweep(default_beta_ratio_grid(), r, base);
}

// ---- CSV ------------------------------------------------------------------

// Shortest decimal rendering that parses back to exactly the same double,
// capped at 12 significant digits (beyond the cap the nearest 12-digit form
// is used). Deterministic, so re-running a sweep reproduces files byte for
// byte.
inline std::string format_number(double v) {
    if (v == 0.0) return "0";  // normalize -0
    char buf[48];
    std::string best;
    for (int precision = 1; precision <= 12; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v &&
            (best.empty() || std::strlen(buf) < best.size()))
            best = buf;
    }
    if (best.empty()) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        best = buf;
    }
    return best;
}

inline std::string to_csv(const SweepResult& result) {
    std::string out;
    for (const auto& c : result.columns) {
        out += c;
        out += ',';
    }
    out += "resp,h_x,h_y,h_x_given_y\n";
    for (const auto& row : result.rows) {
        for (double v : row.varied) {
            out += format_number(v);
            out += ',';
        }
        out += format_number(row.resp);
        out += ',';
        out += format_number(row.h_x);
        out += ',';
        out += format_number(row.h_y);
        out += ',';
        out += format_number(row.h_x_given_y);
        out += '\n';
    }
    return out;
}

}  // namespace resq
