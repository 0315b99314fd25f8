#include "doctest.h"
#include "json.hpp"
#include "mquare/plan.hpp"
#include "support.hpp"

using namespace mquare;
using test_support::plan_for;

namespace {

const Catalog& cat() { return load_builtin_catalog(); }

/// plan_for plus the side inputs some measures need, so nothing warns.
EvaluationPlan clean_plan_for(const std::string& req) {
    auto plan = plan_for({req});
    if (plan.selected_measures.count("CAp-1")) plan.usage_objectives = {"o1"};
    if (plan.selected_measures.count("PRe-2")) plan.baseline_results_ref = "baseline.json";
    if (plan.selected_measures.count("MMo-1")) plan.required_independent_concepts = {"Task"};
    return plan;
}

std::vector<std::string> codes(const std::vector<ValidationFinding>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(f.code);
    return out;
}

const char* kMinimalJson = R"({
  "schema": "mqep-v1",
  "metamodel_id": "OntoM",
  "date": "2026-10-14",
  "version": "final",
  "purposes": ["FINAL_ACCEPT"],
  "artifacts_available": ["SPECIFICATIONS", "IMPLEMENTATION"],
  "selected_requirements": ["MQR02"],
  "selected_measures": ["CCp-1"],
  "criteria": {"CCp-1": {"target_value": 1, "acceptable_tolerance_value": 0.75}}
})";

}  // namespace

TEST_CASE("every requirement has a clean minimal plan") {
    for (const auto& r : cat().requirements()) {
        CAPTURE(r.id);
        auto plan = clean_plan_for(r.id);
        CHECK(plan.artifacts_available == r.required_artifacts);
        CHECK(validate_plan(plan, cat()).empty());
    }
}

TEST_CASE("removing one required artifact gives exactly one artifact-missing error") {
    int cases = 0;
    for (const auto& r : cat().requirements()) {
        for (auto kind : r.required_artifacts) {
            CAPTURE(r.id);
            CAPTURE(to_string(kind));
            auto plan = clean_plan_for(r.id);
            plan.artifacts_available.erase(kind);
            auto fs = validate_plan(plan, cat());
            REQUIRE(fs.size() == 1);
            CHECK(fs[0].severity == Severity::Error);
            CHECK(fs[0].code == "artifact-missing");
            CHECK(fs[0].subject == r.id);
            CHECK(fs[0].message.find(std::string(to_string(kind))) != std::string::npos);
            ++cases;
        }
    }
    CHECK(cases == 38);
}

TEST_CASE("artifact-missing message lists every gap") {
    auto plan = plan_for({"MQR17"});
    plan.artifacts_available.clear();
    auto fs = validate_plan(plan, cat());
    REQUIRE(fs.size() == 1);
    CHECK(format_finding(fs[0]) == "ERROR artifact-missing: MQR17 requires USER_DOCUMENTATION, REPLACED_METAMODEL");
}

TEST_CASE("coverage and orphan findings") {
    auto plan = plan_for({"MQR04"});
    plan.usage_objectives = {"o1"};
    plan.selected_measures.erase("CAp-2");
    plan.criteria.erase("CAp-2");
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"partial-coverage"});
    plan.selected_measures.erase("CAp-1");
    plan.criteria.erase("CAp-1");
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"coverage"});
    CHECK(format_finding(validate_plan(plan, cat())[0]) == "ERROR coverage: MQR04 uncovered");

    auto orphan = plan_for({"MQR02"});
    orphan.selected_measures.insert("CCr-1");
    orphan.criteria["CCr-1"] = {DecisionCriteria{1, 0.5}, {}};
    CHECK(codes(validate_plan(orphan, cat())) == std::vector<std::string>{"orphan-measure"});
}

TEST_CASE("criteria rules") {
    auto plan = plan_for({"MQR02"});
    plan.criteria.erase("CCp-1");
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"criteria-missing"});
    plan.criteria["CCp-1"] = {DecisionCriteria{0.5, 0.9}, {}};
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"criteria-ill-formed"});
    plan.criteria["CCp-1"] = {DecisionCriteria{1, 0.5}, 3};
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"criteria-ill-formed"});
    plan.criteria["CCp-1"] = {DecisionCriteria{1, 0.5}, {}};
    plan.criteria["UAp-1"] = {DecisionCriteria{1, 0.5}, {}};
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"criteria-unselected"});
    plan.criteria.erase("UAp-1");
    plan.criteria["ZZz-1"] = {DecisionCriteria{1, 0.5}, {}};
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"unknown-measure"});

    auto lower = plan_for({"MQR11"});
    lower.criteria["MMo-2"] = {DecisionCriteria{3, 1}, {}};
    CHECK(codes(validate_plan(lower, cat())) == std::vector<std::string>{"criteria-ill-formed"});

    auto nominal = plan_for({"MQR01"});
    CHECK(validate_plan(nominal, cat()).empty());
    nominal.criteria["CCc-1"] = {std::nullopt, 2};
    CHECK(validate_plan(nominal, cat()).empty());
    nominal.criteria["CCc-1"] = {DecisionCriteria{1, 0.5}, {}};
    CHECK(codes(validate_plan(nominal, cat())) == std::vector<std::string>{"criteria-ill-formed"});
}

TEST_CASE("header and purpose rules") {
    auto plan = plan_for({"MQR02"});
    plan.date = "2026-02-30";
    plan.metamodel_id.clear();
    plan.plan_id = "p1";
    auto c = codes(validate_plan(plan, cat()));
    CHECK(c == std::vector<std::string>{"empty-metamodel-id", "date-format"});

    plan = plan_for({"MQR02"});
    plan.purposes.clear();
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"purposes-empty"});
    plan.purposes = {PurposeCode::IntermediatePredict};
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"purpose-version"});
    plan.selected_requirements.insert("MQR42");
    CHECK(codes(validate_plan(plan, cat())).back() == "unknown-requirement");
}

TEST_CASE("purposes") {
    CHECK(all_purposes().size() == 11);
    CHECK(purposes_for(MetamodelVersion::Intermediate).size() == 6);
    CHECK(purposes_for(MetamodelVersion::Final).size() == 5);
    CHECK(purpose_info(PurposeCode::FinalAccept).text == "Decide on the acceptance of the metamodel");
    CHECK(parse_purpose("FINAL_SELECT") == PurposeCode::FinalSelect);
    CHECK_FALSE(parse_purpose("final_select"));
    auto plan = init_plan("m", MetamodelVersion::Intermediate, "2026-10-14");
    CHECK(plan.selectable_purposes().size() == 6);
    CHECK(plan.id() == "m");
    CHECK(is_iso_date(init_plan("m", MetamodelVersion::Final).date));
}

TEST_CASE("formula validation") {
    auto plan = plan_for({"MQR02", "MQR03", "MQR04"});
    plan.usage_objectives = {"o1"};
    plan.sub_characteristic_formulas["CAp"] = "(CAp1 + CAp2) / 2";
    plan.characteristic_formulas["CS"] = "(CCp1 + CCr1 + CAp) / 3";
    CHECK(validate_plan(plan, cat()).empty());

    auto bad = plan;
    bad.sub_characteristic_formulas["CAp"] = "(CAp1 + ";
    CHECK(codes(validate_plan(bad, cat())) == std::vector<std::string>{"formula-syntax"});
    bad = plan;
    bad.sub_characteristic_formulas["CAp"] = "UAp1 + CAp1";
    CHECK(codes(validate_plan(bad, cat())) == std::vector<std::string>{"formula-identifier"});
    bad = plan;
    bad.characteristic_formulas["CS"] = "CCc1 + CAp";
    CHECK(codes(validate_plan(bad, cat())) == std::vector<std::string>{"formula-identifier"});
    bad = plan;
    bad.characteristic_formulas["CS"] = "ULe + CAp";
    CHECK(codes(validate_plan(bad, cat())) == std::vector<std::string>{"formula-identifier"});
    bad = plan;
    bad.characteristic_formulas["QQ"] = "1";
    CHECK(codes(validate_plan(bad, cat())) == std::vector<std::string>{"formula-target"});
}

TEST_CASE("schedule and side inputs") {
    auto plan = plan_for({"MQR02"});
    plan.schedule = {{"measure", "ana", "2026-10-14", "2026-10-13"}};
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"schedule"});
    plan.schedule = {{"measure", "ana", "2026-10-14", "soon"}};
    CHECK(codes(validate_plan(plan, cat())) == std::vector<std::string>{"schedule"});

    CHECK(codes(validate_plan(plan_for({"MQR04"}), cat())) == std::vector<std::string>{"usage-objectives"});
    CHECK(codes(validate_plan(plan_for({"MQR18"}), cat())) == std::vector<std::string>{"baseline-missing"});
    CHECK(codes(validate_plan(plan_for({"MQR10"}), cat())) == std::vector<std::string>{"independent-concepts"});
}

TEST_CASE("plan JSON") {
    auto load = parse_plan_json(kMinimalJson);
    CHECK(load.findings.empty());
    CHECK(validate_plan(load.plan, cat()).empty());
    CHECK(load.plan == test_support::coverage_plan());

    auto full = clean_plan_for("MQR04");
    full.plan_id = "onto-2026";
    full.requester = "QA board";
    full.resources = "two evaluators";
    full.sub_characteristic_formulas["CAp"] = "(CAp1 + CAp2) / 2";
    full.schedule = {{"measure", "ana", "2026-10-14", "2026-10-20"}};
    auto text = serialize_plan_json(full);
    auto back = parse_plan_json(text);
    CHECK(back.findings.empty());
    CHECK(back.plan == full);
    CHECK(serialize_plan_json(back.plan) == text);
    CHECK(nlohmann::json::parse(text)["selectable_purposes"].size() == 5);
}

TEST_CASE("plan JSON findings and failures") {
    auto j = nlohmann::json::parse(kMinimalJson);
    j["colour"] = "blue";
    j["purposes"] = {"FINAL_ACCEPT", "FINAL_ACCEPT", "FINAL_DANCE"};
    j["artifacts_available"].push_back("TEA_LEAVES");
    auto load = parse_plan_json(j.dump());
    auto c = codes(load.findings);
    std::sort(c.begin(), c.end());
    CHECK(c == std::vector<std::string>{"duplicate-entry", "unknown-artifact", "unknown-field", "unknown-purpose"});

    auto dup = parse_plan_json(R"({"schema": "mqep-v1", "version": "final", "date": "x", "date": "2026-10-14"})");
    CHECK(codes(dup.findings) == std::vector<std::string>{"duplicate-key"});
    CHECK(dup.plan.date == "2026-10-14");

    CHECK_THROWS_AS(parse_plan_json("{"), FormatError);
    CHECK_THROWS_AS(parse_plan_json("[]"), FormatError);
    CHECK_THROWS_AS(parse_plan_json(R"({"schema": "mqep-v2", "version": "final"})"), FormatError);
    CHECK_THROWS_AS(parse_plan_json(R"({"schema": "mqep-v1", "version": "beta"})"), FormatError);
    CHECK_THROWS_AS(parse_plan_json(R"({"schema": "mqep-v1", "version": "final", "purposes": "FINAL_ACCEPT"})"),
                    FormatError);
    CHECK_THROWS_AS(
        parse_plan_json(R"({"schema": "mqep-v1", "version": "final", "criteria": {"CCp-1": {"target_value": "1"}}})"),
        FormatError);
}

TEST_CASE("plan document") {
    auto plan = clean_plan_for("MQR04");
    plan.sub_characteristic_formulas["CAp"] = "(CAp1 + CAp2) / 2";
    auto doc = render_plan_document(plan, cat());
    CHECK(doc == render_plan_document(plan, cat()));
    const char* headings[] = {"# Metamodel Quality Evaluation Plan",
                              "## 1. Evaluation Requirements",
                              "### 1.1. Purpose",
                              "### 1.2. Metamodel artifacts",
                              "### 1.3. Resources",
                              "## 2. Metamodel Quality Requirements",
                              "## 3. Metamodel Quality Measures",
                              "## 4. Criteria for Metamodel Quality Measures",
                              "## 5. Criteria for Evaluating the Metamodel",
                              "## 6. Metamodel Evaluation Activities",
                              "## 7. Measurements Table"};
    std::size_t at = 0;
    for (const char* h : headings) {
        CAPTURE(h);
        auto pos = doc.find(std::string(h) + "\n", at);
        REQUIRE(pos != std::string::npos);
        at = pos + 1;
    }
    CHECK(doc.find("Decide on the acceptance of the metamodel") != std::string::npos);
    CHECK(doc.find("(CAp1 + CAp2) / 2") != std::string::npos);
    CHECK(doc.find("MQR04") != std::string::npos);

    auto broken = plan;
    broken.artifacts_available.clear();
    CHECK_THROWS_AS(render_plan_document(broken, cat()), PlanInvalid);
}
