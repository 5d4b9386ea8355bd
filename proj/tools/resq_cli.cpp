// resq: compute, sweep, simulate and evaluate comparative human
// responsibility in human-automation decision systems.
//
// Exit codes: 0 success, 1 flag/parameter error, 2 model-file validation
// error, 3 degenerate entropy, 4 degenerate sample. Nothing is written to
// standard output unless the invocation succeeds.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resq/resq.hpp"

namespace {

struct ScenarioFlags {
    double p_t = 0.2;
    double d_human = 0.0;
    double d_automation = 0.0;
    double v_ratio_human = 2.0 / 3.0;
    double v_ratio_automation = 2.0 / 3.0;
    double beta_human_base = 0.0;      // 0 = unset
    double beta_automation = 0.0;      // 0 = unset
    std::string loop_mode = "in";

    resq::ScenarioParams to_params() const {
        resq::ScenarioParams p{};
        p.p_t = p_t;
        p.d_human = d_human;
        p.d_automation = d_automation;
        p.v_ratio_human = v_ratio_human;
        p.v_ratio_automation = v_ratio_automation;
        if (beta_human_base != 0.0) p.beta_human_base_override = beta_human_base;
        if (beta_automation != 0.0) p.beta_automation_override = beta_automation;
        p.loop_mode = loop_mode == "on" ? resq::LoopMode::on_loop : resq::LoopMode::in_loop;
        return p;
    }
};

// Registers the scenario parameter flags shared by compute, sweep and
// simulate. Sweeps fall back to the reference configuration for anything the
// axes leave fixed; the other subcommands require explicit sensitivities.
void add_scenario_flags(CLI::App& cmd, ScenarioFlags& f, bool sensitivities_required) {
    if (!sensitivities_required) {
        f.d_human = 2.0;
        f.d_automation = 2.0;
    }
    auto* pt = cmd.add_option("--pt", f.p_t, "prior probability that an entity is a target");
    auto* dh = cmd.add_option("--dh", f.d_human, "human detection sensitivity d'");
    auto* da = cmd.add_option("--da", f.d_automation, "automation detection sensitivity d'");
    if (sensitivities_required) {
        pt->required();
        dh->required();
        da->required();
    } else {
        pt->capture_default_str();
        dh->capture_default_str();
        da->capture_default_str();
    }
    cmd.add_option("--vratio-h", f.v_ratio_human,
                   "human cost-benefit ratio (v_tn - v_fp)/(v_tp - v_fn)")
        ->capture_default_str();
    cmd.add_option("--vratio-a", f.v_ratio_automation, "automation cost-benefit ratio")
        ->capture_default_str();
    cmd.add_option("--beta-h", f.beta_human_base,
                   "explicit unaided human criterion (replaces the optimal one)");
    cmd.add_option("--beta-a", f.beta_automation,
                   "explicit automation criterion (replaces the optimal one)");
    cmd.add_option("--loop-mode", f.loop_mode,
                   "human-in-the-loop or on-the-loop; echoed in reports, never changes results")
        ->check(CLI::IsMember({"in", "on"}))
        ->capture_default_str();
}

// Parse "name=start:stop:step" or "name=v1,v2,..." into an axis.
resq::AxisSpec parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw resq::ValidationError("axis '" + text + "' must look like name=start:stop:step or "
                                    "name=v1,v2,...");
    const std::string name = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    if (rest.empty()) throw resq::ValidationError("axis '" + text + "' has no values");

    auto to_double = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw resq::ValidationError("axis '" + text + "': '" + s + "' is not a number");
        }
    };

    if (rest.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t from = 0;
        for (std::size_t pos; (pos = rest.find(':', from)) != std::string::npos; from = pos + 1)
            parts.push_back(rest.substr(from, pos - from));
        parts.push_back(rest.substr(from));
        if (parts.size() != 3)
            throw resq::ValidationError("axis '" + text + "' range needs start:stop:step");
        return resq::AxisSpec::range(name, to_double(parts[0]), to_double(parts[1]),
                                     to_double(parts[2]));
    }

    resq::AxisSpec axis{name, {}};
    std::size_t from = 0;
    for (std::size_t pos; (pos = rest.find(',', from)) != std::string::npos; from = pos + 1)
        axis.values.push_back(to_double(rest.substr(from, pos - from)));
    axis.values.push_back(to_double(rest.substr(from)));
    return axis;
}

std::string run_compute(const ScenarioFlags& flags, bool self_check) {
    const resq::ResponsibilityReport report = resq::responsibility(flags.to_params());
    resq::ordered_json doc = resq::report_to_json(report);

    if (self_check) {
        double max_err = 0.0;
        const auto& j = report.tables.joint_xy;
        for (std::size_t r = 0; r < 2; ++r)
            max_err = std::max(max_err, std::abs(j.at(r, 0) + j.at(r, 1) - report.tables.dist_y[r]));
        for (std::size_t c = 0; c < 2; ++c)
            max_err = std::max(max_err, std::abs(j.at(0, c) + j.at(1, c) - report.tables.dist_x[c]));
        const double identity_err =
            std::max(std::abs(report.h_x_given_y - (report.h_xy - report.h_y)),
                     std::abs(report.resp * report.h_x - report.h_x_given_y));
        if (max_err > 1e-12 || identity_err > 1e-9)
            throw resq::ValidationError("self-check failed: marginal error " +
                                        std::to_string(max_err) + ", identity error " +
                                        std::to_string(identity_err));
        doc["self_check"] = {{"max_marginal_abs_error", max_err},
                             {"max_identity_abs_error", identity_err},
                             {"ok", true}};
    }
    return doc.dump(2) + "\n";
}

std::string run_sweep(const std::string& preset, const std::vector<std::string>& axis_texts,
                      const ScenarioFlags& flags, std::vector<std::string>& warnings) {
    resq::SweepResult result;
    if (!preset.empty()) {
        if (preset == "fig4") result = resq::fig4_sweep();
        else if (preset == "fig5") result = resq::fig5_sweep();
        else if (preset == "fig6a") result = resq::fig6_sweep('a');
        else if (preset == "fig6b") result = resq::fig6_sweep('b');
        else if (preset == "fig6c") result = resq::fig6_sweep('c');
        else throw resq::ValidationError("unknown preset '" + preset + "'");
    } else {
        resq::GridSpec spec;
        spec.base = flags.to_params();
        for (const auto& text : axis_texts) spec.axes.push_back(parse_axis(text));
        result = resq::grid_sweep(spec);
    }
    warnings = result.errors;
    if (result.rows.empty())
        throw resq::ValidationError("sweep produced no rows (every grid point failed)");
    return resq::to_csv(result);
}

std::string run_simulate(const ScenarioFlags& flags, std::uint64_t trials, std::uint64_t seed) {
    const resq::SimResult result =
        resq::simulate_aws(flags.to_params(), resq::SimConfig{trials, seed});
    return resq::sim_result_to_json(result).dump(2) + "\n";
}

std::string run_model(const std::string& path, bool validate_only) {
    const resq::FlowModel model = resq::load_flow_model(path);
    if (validate_only) {
        const resq::Diagnostics d = resq::validate(model);
        if (!d.ok()) throw resq::ModelError(d.issues);
        resq::ordered_json doc{{"valid", true},
                               {"variables", model.variables.size()},
                               {"output", model.output}};
        return doc.dump(2) + "\n";
    }
    const resq::FlowReport report = resq::general_responsibility(model);
    return resq::flow_report_to_json(report).dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"comparative human responsibility in human-automation systems"};
    app.require_subcommand(1);

    ScenarioFlags compute_flags;
    bool self_check = false;
    auto* compute = app.add_subcommand("compute", "closed-form responsibility for one scenario");
    add_scenario_flags(*compute, compute_flags, /*sensitivities_required=*/true);
    compute->add_flag("--self-check", self_check,
                      "verify table marginal consistency and entropy identities before printing");

    ScenarioFlags sweep_flags;
    std::string preset;
    std::vector<std::string> axis_texts;
    std::string out_path;
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps over scenario grids (CSV)");
    add_scenario_flags(*sweep, sweep_flags, /*sensitivities_required=*/false);
    sweep->add_option("--preset", preset, "fig4 | fig5 | fig6a | fig6b | fig6c")
        ->check(CLI::IsMember({"fig4", "fig5", "fig6a", "fig6b", "fig6c"}));
    sweep->add_option("--axis", axis_texts,
                      "swept parameter, name=start:stop:step or name=v1,v2,... (repeat for a "
                      "2-D grid; names: p_t, d_human, d_automation, v_ratio_automation, "
                      "v_ratio_human, beta_automation, beta_human_base)")
        ->expected(0, 2);
    sweep->add_option("--out", out_path, "write CSV here instead of standard output");

    ScenarioFlags sim_flags;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo cross-validation of a scenario");
    add_scenario_flags(*simulate, sim_flags, /*sensitivities_required=*/true);
    simulate->add_option("--trials", trials, "number of trials to sample")->required();
    simulate->add_option("--seed", seed, "64-bit generator seed")->capture_default_str();

    std::string model_path;
    bool validate_only = false;
    auto* model = app.add_subcommand("model", "evaluate a general flow-model JSON file");
    model->add_option("--file", model_path, "path to the model JSON")->required();
    model->add_flag("--validate-only", validate_only, "check the model and report validity only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the error message
        return code == 0 ? 0 : 1;
    }

    std::string output;
    std::vector<std::string> warnings;
    try {
        if (compute->parsed()) {
            output = run_compute(compute_flags, self_check);
        } else if (sweep->parsed()) {
            if (preset.empty() == axis_texts.empty())
                throw resq::ValidationError("sweep needs exactly one of --preset or --axis");
            output = run_sweep(preset, axis_texts, sweep_flags, warnings);
        } else if (simulate->parsed()) {
            output = run_simulate(sim_flags, trials, seed);
        } else if (model->parsed()) {
            output = run_model(model_path, validate_only);
        }
    } catch (const resq::ModelError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const resq::DegenerateEntropyError& e) {
        std::cerr << e.what() << " [H(target)=" << e.h_target() << ", H(other)=" << e.h_other()
                  << "]\n";
        return 3;
    } catch (const resq::DegenerateSampleError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const resq::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    if (sweep->parsed() && !out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write to '" << out_path << "'\n";
            return 1;
        }
        out << output;
        return 0;
    }
    std::cout << output;
    return 0;
}
