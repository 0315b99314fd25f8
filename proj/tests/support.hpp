#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "mquare/catalog.hpp"
#include "mquare/plan.hpp"

namespace test_support {

inline std::string source_path(const std::string& rel) { return std::string(MQUARE_SOURCE_DIR) + "/" + rel; }

inline std::string fixture(const std::string& name) { return source_path("tests/fixtures/" + name); }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Criteria that pass validation for any numeric measure.
inline mquare::MeasureCriteria default_criteria(const mquare::MeasureSpec& m) {
    using mquare::DecisionCriteria;
    if (m.orientation == mquare::Orientation::LowerBetter) {
        if (m.range.type == mquare::ValueRange::Type::UnboundedInteger) return {DecisionCriteria{0, 2}, {}};
        return {DecisionCriteria{0, 0.2}, {}};
    }
    return {DecisionCriteria{1, 0.75}, {}};
}

/// Plan selecting the given requirements with all their measures, the
/// artifacts they need, and criteria for every numeric measure.
inline mquare::EvaluationPlan plan_for(std::initializer_list<std::string> reqs) {
    const auto& catalog = mquare::load_builtin_catalog();
    auto plan = mquare::init_plan("OntoM", mquare::MetamodelVersion::Final, "2026-10-14");
    plan.purposes = {mquare::PurposeCode::FinalAccept};
    for (const auto& r : reqs) {
        const auto& req = catalog.requirement(r);
        plan.selected_requirements.insert(r);
        plan.artifacts_available.insert(req.required_artifacts.begin(), req.required_artifacts.end());
        for (const auto& id : req.measures) {
            plan.selected_measures.insert(id);
            const auto& m = catalog.measure(id);
            if (m.is_numeric()) plan.criteria[id] = default_criteria(m);
        }
    }
    return plan;
}

/// The single-measure conceptual coverage plan with target 1, tolerance 0.75.
inline mquare::EvaluationPlan coverage_plan() {
    auto plan = plan_for({"MQR02"});
    plan.criteria["CCp-1"] = {mquare::DecisionCriteria{1.0, 0.75}, {}};
    return plan;
}

}  // namespace test_support
