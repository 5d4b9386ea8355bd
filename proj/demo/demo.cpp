// Minimal tour of the library: evaluate one aided-decision scenario in closed
// form, cross-check it with the general flow-model evaluator, and print both.

#include <iostream>

#include "resq/resq.hpp"

int main() {
    resq::ScenarioParams params{};
    params.p_t = 0.2;
    params.d_human = 2.0;
    params.d_automation = 2.0;

    const resq::ResponsibilityReport report = resq::responsibility(params);
    std::cout << "closed form:\n" << resq::report_to_json(report).dump(2) << "\n\n";

    // the same system as an explicit three-variable flow model
    const resq::OutcomeRates a = report.automation;
    const auto [alarm, silent] = resq::human_conditional_rates(params, report.criteria);
    resq::FlowModel model;
    model.variables = {
        {"T", resq::Owner::environment, {"target", "noise"}, {}, {{params.p_t, 1 - params.p_t}}},
        {"Y", resq::Owner::automation, {"target", "noise"}, {"T"},
         {{a.p_tp, a.p_fn}, {a.p_fp, a.p_tn}}},
        {"X", resq::Owner::output, {"engage", "abort"}, {"T", "Y"},
         {{alarm.p_tp, alarm.p_fn},
          {silent.p_tp, silent.p_fn},
          {alarm.p_fp, alarm.p_tn},
          {silent.p_fp, silent.p_tn}}},
    };
    model.output = "X";

    const resq::FlowReport general = resq::general_responsibility(model);
    std::cout << "flow model:\n" << resq::flow_report_to_json(general).dump(2) << "\n";
    return 0;
}
