#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "resq/aided_decision.hpp"
#include "resq/errors.hpp"
#include "resq/flowmodel.hpp"
#include "resq/simulate.hpp"

namespace resq {

using ordered_json = nlohmann::ordered_json;

inline const char* loop_mode_name(LoopMode m) {
    return m == LoopMode::in_loop ? "in" : "on";
}

inline Owner owner_from_string(const std::string& s) {
    if (s == "environment") return Owner::environment;
    if (s == "automation") return Owner::automation;
    if (s == "human") return Owner::human;
    if (s == "output") return Owner::output;
    throw ModelError("unknown owner '" + s + "' (expected environment|automation|human|output)");
}

// Build a FlowModel from the documented JSON schema:
//   { "variables": [ { "name", "owner", "states", "parents", "cpt" }... ],
//     "output": "<variable name>" }
// CPT rows are ordered lexicographically by parent declaration order, last
// parent varying fastest. Structural schema problems throw ModelError with
// the full diagnostic list.
inline FlowModel flow_model_from_json(const nlohmann::json& doc) {
    std::vector<std::string> issues;
    FlowModel model;

    if (!doc.is_object()) {
        throw ModelError("model file must hold a JSON object");
    }
    if (!doc.contains("variables") || !doc["variables"].is_array())
        issues.push_back("missing or non-array 'variables'");
    if (!doc.contains("output") || !doc["output"].is_string())
        issues.push_back("missing or non-string 'output'");
    if (!issues.empty()) throw ModelError(std::move(issues));

    model.output = doc["output"].get<std::string>();
    for (std::size_t i = 0; i < doc["variables"].size(); ++i) {
        const auto& v = doc["variables"][i];
        const std::string where = "variables[" + std::to_string(i) + "]";
        if (!v.is_object()) {
            issues.push_back(where + " is not an object");
            continue;
        }
        FlowVariable var;
        if (v.contains("name") && v["name"].is_string()) var.name = v["name"].get<std::string>();
        else issues.push_back(where + ": missing or non-string 'name'");
        if (v.contains("owner") && v["owner"].is_string()) {
            try {
                var.owner = owner_from_string(v["owner"].get<std::string>());
            } catch (const ModelError& e) {
                issues.push_back(where + ": " + e.diagnostics().front());
            }
        } else {
            issues.push_back(where + ": missing or non-string 'owner'");
        }
        if (v.contains("states") && v["states"].is_array()) {
            for (const auto& s : v["states"])
                if (s.is_string()) var.states.push_back(s.get<std::string>());
                else issues.push_back(where + ": non-string state label");
        } else {
            issues.push_back(where + ": missing or non-array 'states'");
        }
        if (v.contains("parents")) {  // optional; defaults to none
            if (v["parents"].is_array()) {
                for (const auto& p : v["parents"])
                    if (p.is_string()) var.parents.push_back(p.get<std::string>());
                    else issues.push_back(where + ": non-string parent name");
            } else {
                issues.push_back(where + ": 'parents' must be an array");
            }
        }
        if (v.contains("cpt") && v["cpt"].is_array()) {
            for (const auto& row : v["cpt"]) {
                if (!row.is_array()) {
                    issues.push_back(where + ": cpt rows must be arrays");
                    continue;
                }
                std::vector<double> r;
                for (const auto& cell : row)
                    if (cell.is_number()) r.push_back(cell.get<double>());
                    else issues.push_back(where + ": non-numeric cpt entry");
                var.cpt.push_back(std::move(r));
            }
        } else {
            issues.push_back(where + ": missing or non-array 'cpt'");
        }
        model.variables.push_back(std::move(var));
    }
    if (!issues.empty()) throw ModelError(std::move(issues));
    return model;
}

inline FlowModel load_flow_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open model file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ModelError("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return flow_model_from_json(doc);
}

// ---- report serialization ---------------------------------------------------

inline ordered_json pmf_to_json(const Pmf& p) {
    ordered_json out = ordered_json::object();
    for (std::size_t i = 0; i < p.size(); ++i) out[p.labels()[i]] = p[i];
    return out;
}

inline ordered_json joint_to_json(const JointPmf& j) {
    ordered_json out = ordered_json::object();
    for (std::size_t r = 0; r < j.rows(); ++r) {
        ordered_json row = ordered_json::object();
        for (std::size_t c = 0; c < j.cols(); ++c) row[j.col_labels()[c]] = j.at(r, c);
        out[j.row_labels()[r]] = std::move(row);
    }
    return out;
}

inline ordered_json rates_to_json(const OutcomeRates& r) {
    return ordered_json{{"p_tp", r.p_tp}, {"p_fn", r.p_fn}, {"p_fp", r.p_fp}, {"p_tn", r.p_tn}};
}

inline ordered_json report_to_json(const ResponsibilityReport& r) {
    ordered_json params{{"p_t", r.params.p_t},
                        {"d_human", r.params.d_human},
                        {"d_automation", r.params.d_automation},
                        {"v_ratio_automation", r.params.v_ratio_automation},
                        {"v_ratio_human", r.params.v_ratio_human},
                        {"loop_mode", loop_mode_name(r.params.loop_mode)}};
    if (r.params.beta_automation_override)
        params["beta_automation_override"] = *r.params.beta_automation_override;
    if (r.params.beta_human_base_override)
        params["beta_human_base_override"] = *r.params.beta_human_base_override;

    ordered_json automation = rates_to_json(r.automation);
    automation["d_prime"] = r.params.d_automation;
    automation["beta"] = r.beta_automation;
    automation["cutoff"] = r.cutoff_automation;

    return ordered_json{
        {"params", std::move(params)},
        {"automation", std::move(automation)},
        {"dual_criteria",
         {{"beta_given_alarm", r.criteria.beta_given_alarm},
          {"beta_given_noise", r.criteria.beta_given_noise},
          {"c_given_alarm", r.criteria.c_given_alarm},
          {"c_given_noise", r.criteria.c_given_noise}}},
        {"tables",
         {{"dist_y", pmf_to_json(r.tables.dist_y)},
          {"joint_xy", joint_to_json(r.tables.joint_xy)},
          {"dist_x", pmf_to_json(r.tables.dist_x)}}},
        {"h_x", r.h_x},
        {"h_y", r.h_y},
        {"h_xy", r.h_xy},
        {"h_x_given_y", r.h_x_given_y},
        {"resp", r.resp}};
}

inline ordered_json flow_report_to_json(const FlowReport& r) {
    ordered_json out{{"output_variable", r.output_variable},
                     {"automation_variables", r.automation_variables},
                     {"h_x", r.h_x},
                     {"h_y", r.h_y},
                     {"h_xy", r.h_xy},
                     {"h_x_given_y", r.h_x_given_y},
                     {"resp", r.resp}};
    if (r.empty_automation_set)
        out["notice"] =
            "model declares no automation-owned variables; Resp(Z) = 1 by conditioning on the "
            "empty set";
    return out;
}

inline ordered_json sim_result_to_json(const SimResult& r) {
    ordered_json counts{{"target", {{"engage", r.counts[0][0]}, {"abort", r.counts[0][1]}}},
                        {"noise", {{"engage", r.counts[1][0]}, {"abort", r.counts[1][1]}}}};
    return ordered_json{{"generator", r.generator},
                        {"seed", r.seed},
                        {"trials", r.trials},
                        {"counts", std::move(counts)},
                        {"empirical_joint", joint_to_json(r.empirical_joint)},
                        {"empirical_resp", r.empirical_resp},
                        {"miller_madow_resp", r.miller_madow_resp},
                        {"analytic_resp", r.analytic_resp},
                        {"max_cell_abs_error", r.max_cell_abs_error}};
}

}  // namespace resq
