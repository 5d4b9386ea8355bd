#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "resq/errors.hpp"
#include "resq/infotheory.hpp"
#include "resq/pmf.hpp"

namespace resq {

// Role of a variable in the information flow; the automation-owned variables
// form the conditioning set of the responsibility measure.
enum class Owner { environment, automation, human, output };

inline const char* owner_name(Owner o) {
    switch (o) {
        case Owner::environment: return "environment";
        case Owner::automation: return "automation";
        case Owner::human: return "human";
        case Owner::output: return "output";
    }
    return "?";
}

// A discrete variable with a conditional probability table. CPT rows are
// ordered lexicographically by parent declaration order with the last parent
// varying fastest; each row is a distribution over this variable's states.
struct FlowVariable {
    std::string name;
    Owner owner = Owner::environment;
    std::vector<std::string> states;
    std::vector<std::string> parents;
    std::vector<std::vector<double>> cpt;
};

// A DAG of discrete variables describing one human-automation system.
struct FlowModel {
    std::vector<FlowVariable> variables;
    std::string output;  // name of the single output-owned variable
};

struct Diagnostics {
    std::vector<std::string> issues;
    bool ok() const noexcept { return issues.empty(); }
};

// Enumeration guard: models above this many joint atoms are rejected.
inline constexpr std::uint64_t kMaxJointAtoms = std::uint64_t{1} << 24;

namespace detail {

inline std::unordered_map<std::string, std::size_t> index_by_name(const FlowModel& m) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < m.variables.size(); ++i) idx.emplace(m.variables[i].name, i);
    return idx;
}

}  // namespace detail

// Collect every structural violation: duplicate/dangling names, cycles,
// malformed CPTs, output mismatches. Returns diagnostics instead of throwing
// so callers can present the full list at once.
inline Diagnostics validate(const FlowModel& model) {
    Diagnostics d;
    auto issue = [&d](std::string msg) { d.issues.push_back(std::move(msg)); };

    if (model.variables.empty()) {
        issue("model declares no variables");
        return d;
    }

    std::unordered_set<std::string> names;
    for (const auto& v : model.variables) {
        if (v.name.empty()) issue("variable with empty name");
        if (!names.insert(v.name).second) issue("duplicate variable name '" + v.name + "'");
    }
    const auto idx = detail::index_by_name(model);

    std::size_t output_count = 0;
    for (const auto& v : model.variables)
        if (v.owner == Owner::output) ++output_count;
    if (output_count != 1)
        issue("model must declare exactly one output-owned variable, found " +
              std::to_string(output_count));
    if (!idx.count(model.output))
        issue("output field '" + model.output + "' names no declared variable");
    else if (model.variables[idx.at(model.output)].owner != Owner::output)
        issue("output field '" + model.output + "' names a variable not owned by output");

    for (const auto& v : model.variables) {
        if (v.states.size() < 2)
            issue("variable '" + v.name + "' needs at least 2 states");
        std::unordered_set<std::string> st(v.states.begin(), v.states.end());
        if (st.size() != v.states.size())
            issue("variable '" + v.name + "' has duplicate state labels");

        std::size_t rows_needed = 1;
        std::unordered_set<std::string> seen_parents;
        for (const auto& p : v.parents) {
            if (p == v.name) issue("variable '" + v.name + "' lists itself as a parent");
            if (!seen_parents.insert(p).second)
                issue("variable '" + v.name + "' lists parent '" + p + "' twice");
            auto it = idx.find(p);
            if (it == idx.end()) {
                issue("variable '" + v.name + "' references undeclared parent '" + p + "'");
            } else {
                rows_needed *= model.variables[it->second].states.size();
            }
        }
        if (v.cpt.size() != rows_needed)
            issue("variable '" + v.name + "' needs " + std::to_string(rows_needed) +
                  " cpt rows (one per parent-state combination), has " +
                  std::to_string(v.cpt.size()));
        for (std::size_t r = 0; r < v.cpt.size(); ++r) {
            const auto& row = v.cpt[r];
            if (row.size() != v.states.size()) {
                issue("variable '" + v.name + "' cpt row " + std::to_string(r) +
                      " has wrong width");
                continue;
            }
            double sum = 0.0;
            bool bad = false;
            for (double p : row) {
                if (!std::isfinite(p) || p < 0.0) bad = true;
                sum += p;
            }
            if (bad)
                issue("variable '" + v.name + "' cpt row " + std::to_string(r) +
                      " has negative or non-finite entries");
            else if (std::abs(sum - 1.0) > 1e-9)
                issue("variable '" + v.name + "' cpt row " + std::to_string(r) + " sums to " +
                      std::to_string(sum) + ", not 1 within 1e-9");
        }
    }

    // cycle detection over resolvable edges
    const std::size_t n = model.variables.size();
    std::vector<int> state(n, 0);  // 0 unvisited, 1 in progress, 2 done
    std::vector<std::size_t> stack;
    auto dfs = [&](auto&& self, std::size_t u) -> bool {
        state[u] = 1;
        stack.push_back(u);
        for (const auto& p : model.variables[u].parents) {
            auto it = idx.find(p);
            if (it == idx.end() || it->second == u) continue;
            if (state[it->second] == 1) {
                std::string cyc = model.variables[it->second].name;
                for (auto jt = stack.rbegin(); jt != stack.rend(); ++jt) {
                    cyc += " <- " + model.variables[*jt].name;
                    if (*jt == it->second) break;
                }
                issue("cycle detected: " + cyc);
                return false;
            }
            if (state[it->second] == 0 && !self(self, it->second)) return false;
        }
        stack.pop_back();
        state[u] = 2;
        return true;
    };
    for (std::size_t i = 0; i < n && d.ok(); ++i)
        if (state[i] == 0) dfs(dfs, i);

    return d;
}

// The exact joint distribution over all variables, flattened with variables
// in declaration order and the last variable varying fastest.
struct JointTable {
    std::vector<std::string> variable_names;
    std::vector<std::size_t> radices;  // state count per variable
    std::vector<double> probs;         // size = product of radices

    std::size_t digit(std::size_t atom, std::size_t var) const {
        std::size_t stride = 1;
        for (std::size_t v = radices.size(); v-- > var + 1;) stride *= radices[v];
        return (atom / stride) % radices[var];
    }
};

inline JointTable joint_distribution(const FlowModel& model) {
    const Diagnostics d = validate(model);
    if (!d.ok()) throw ModelError(d.issues);

    const std::size_t n = model.variables.size();
    std::uint64_t atoms = 1;
    for (const auto& v : model.variables) {
        atoms *= v.states.size();
        if (atoms > kMaxJointAtoms)
            throw ModelError("joint state space exceeds the enumeration guard of 2^24 atoms");
    }

    const auto idx = detail::index_by_name(model);

    // per-variable strides in the flattened atom index
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t v = n; v-- > 1;) stride[v - 1] = stride[v] * model.variables[v].states.size();

    // normalized CPTs plus parent strides for row lookup
    std::vector<std::vector<std::vector<double>>> cpt(n);
    std::vector<std::vector<std::size_t>> parent_index(n);
    std::vector<std::vector<std::size_t>> parent_stride(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& var = model.variables[v];
        cpt[v] = var.cpt;
        for (auto& row : cpt[v]) {
            double sum = 0.0;
            for (double p : row) sum += p;
            if (sum != 1.0)
                for (double& p : row) p /= sum;
        }
        parent_index[v].reserve(var.parents.size());
        for (const auto& p : var.parents) parent_index[v].push_back(idx.at(p));
        parent_stride[v].assign(var.parents.size(), 1);
        for (std::size_t j = var.parents.size(); j-- > 1;)
            parent_stride[v][j - 1] =
                parent_stride[v][j] * model.variables[parent_index[v][j]].states.size();
    }

    JointTable table;
    table.variable_names.reserve(n);
    table.radices.reserve(n);
    for (const auto& v : model.variables) {
        table.variable_names.push_back(v.name);
        table.radices.push_back(v.states.size());
    }
    table.probs.assign(static_cast<std::size_t>(atoms), 0.0);

    std::vector<std::size_t> digits(n, 0);
    for (std::size_t atom = 0; atom < atoms; ++atom) {
        double p = 1.0;
        for (std::size_t v = 0; v < n; ++v)
            digits[v] = (atom / stride[v]) % model.variables[v].states.size();
        for (std::size_t v = 0; v < n && p > 0.0; ++v) {
            std::size_t row = 0;
            for (std::size_t j = 0; j < parent_index[v].size(); ++j)
                row += digits[parent_index[v][j]] * parent_stride[v][j];
            p *= cpt[v][row][digits[v]];
        }
        table.probs[atom] = p;
    }
    return table;
}

// Responsibility evaluation of a general model: x is the output variable Z,
// y the compound state of every automation-owned variable.
struct FlowReport {
    std::string output_variable;
    std::vector<std::string> automation_variables;
    bool empty_automation_set = false;  // Resp defaults to 1 when nothing is conditioned on
    double h_x = 0.0;
    double h_y = 0.0;
    double h_xy = 0.0;
    double h_x_given_y = 0.0;
    double resp = 1.0;
};

namespace detail {

// Marginalize the full joint onto (compound selection, z).
inline JointPmf pair_marginal(const JointTable& joint, const std::vector<std::size_t>& row_vars,
                              std::size_t col_var, const FlowModel& model) {
    std::size_t n_rows = 1;
    for (std::size_t v : row_vars) n_rows *= joint.radices[v];
    const std::size_t n_cols = joint.radices[col_var];

    std::vector<std::vector<double>> cells(n_rows, std::vector<double>(n_cols, 0.0));
    for (std::size_t atom = 0; atom < joint.probs.size(); ++atom) {
        const double p = joint.probs[atom];
        if (p == 0.0) continue;
        std::size_t r = 0;
        for (std::size_t v : row_vars) r = r * joint.radices[v] + joint.digit(atom, v);
        cells[r][joint.digit(atom, col_var)] += p;
    }

    std::vector<std::string> row_labels(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        std::size_t rem = r;
        std::string label;
        for (std::size_t k = row_vars.size(); k-- > 0;) {
            const auto& var = model.variables[row_vars[k]];
            const std::size_t digit = rem % var.states.size();
            rem /= var.states.size();
            std::string part = var.name + "=" + var.states[digit];
            label = label.empty() ? part : part + "|" + label;
        }
        row_labels[r] = label.empty() ? "()" : label;
    }
    return JointPmf(std::move(row_labels), model.variables[col_var].states, std::move(cells));
}

}  // namespace detail

// Resp(Z) = H(Z | all automation-owned variables) / H(Z) by exact
// enumeration. An empty automation set conditions on nothing, so Resp = 1;
// the report flags it since it usually signals a modeling mistake.
inline FlowReport general_responsibility(const FlowModel& model) {
    const JointTable joint = joint_distribution(model);
    const auto idx = detail::index_by_name(model);

    FlowReport report;
    report.output_variable = model.output;
    const std::size_t z = idx.at(model.output);

    std::vector<std::size_t> automation_vars;
    for (std::size_t v = 0; v < model.variables.size(); ++v)
        if (model.variables[v].owner == Owner::automation) {
            automation_vars.push_back(v);
            report.automation_variables.push_back(model.variables[v].name);
        }

    // marginal of Z
    std::vector<double> z_marginal(joint.radices[z], 0.0);
    for (std::size_t atom = 0; atom < joint.probs.size(); ++atom)
        z_marginal[joint.digit(atom, z)] += joint.probs[atom];
    const double h_z = detail::entropy_bits(z_marginal);
    if (h_z <= 0.0)
        throw DegenerateEntropyError(
            "general_responsibility: the output variable is constant (H(Z) = 0)", h_z, 0.0);

    if (automation_vars.empty()) {
        report.empty_automation_set = true;
        report.h_x = report.h_xy = report.h_x_given_y = h_z;
        report.h_y = 0.0;
        report.resp = 1.0;
        return report;
    }

    const JointPmf pair = detail::pair_marginal(joint, automation_vars, z, model);
    report.h_x = entropy(pair.col_marginal());
    report.h_y = entropy(pair.row_marginal());
    report.h_xy = joint_entropy(pair);
    report.h_x_given_y = conditional_entropy(pair, Axis::row);
    report.resp = responsibility_ratio(pair);
    return report;
}

// Theil's U(a | b) between any two distinct variables of the model, from
// their exact pair marginal.
inline double theil_association(const FlowModel& model, const std::string& a,
                                const std::string& b) {
    if (a == b) throw ValidationError("theil_association: choose two distinct variables");
    const JointTable joint = joint_distribution(model);
    const auto idx = detail::index_by_name(model);
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw ValidationError("theil_association: unknown variable '" + a + "'");
    if (ib == idx.end()) throw ValidationError("theil_association: unknown variable '" + b + "'");
    // rows = b (conditioning side), cols = a (target side)
    const JointPmf pair = detail::pair_marginal(joint, {ib->second}, ia->second, model);
    return theil_u(pair, Axis::col);
}

}  // namespace resq
