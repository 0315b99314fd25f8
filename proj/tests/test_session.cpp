#include <random>

#include "doctest.h"
#include "mquare/session.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mquare;
using test_support::coverage_plan;
using test_support::plan_for;

namespace {

MeasurementSession session_of(const EvaluationPlan& plan, std::string evaluator, std::vector<ElementValues> entries) {
    MeasurementSession s;
    s.plan_id = plan.id();
    s.evaluator = std::move(evaluator);
    s.entries = std::move(entries);
    return s;
}

ElementValues ab(const std::string& id, double a, double b) { return {id, {{"A", a}, {"B", b}}, {}, {}}; }

EvaluationPlan wide_plan() {
    auto plan = plan_for({"MQR01", "MQR02", "MQR03", "MQR05", "MQR11", "MQR13", "MQR15"});
    plan.criteria["CCc-2"] = {std::nullopt, 2};
    return plan;
}

}  // namespace

TEST_CASE("single coverage session") {
    auto plan = coverage_plan();
    auto rs = compute_session(plan, session_of(plan, "ana", {ab("CCp-1", 0, 20)}));
    REQUIRE(rs.count("CCp-1"));
    const auto& r = rs.at("CCp-1");
    CHECK(r.value.number() == 1.0);
    CHECK(r.status == MeasureStatus::TargetMet);
    CHECK(r.elements == "A = 0, B = 20");
    REQUIRE(r.per_evaluator.size() == 1);
    CHECK(r.per_evaluator[0].evaluator == "ana");
}

TEST_CASE("appropriateness derived from objectives") {
    auto plan = plan_for({"MQR04"});
    plan.usage_objectives = {"o1", "o2"};
    ElementValues cap1{"CAp-1", {}, {}, {{"o1", {{"A", 2}, {"B", 5}}}, {"o2", {{"A", 1}, {"B", 10}}}}};
    auto rs = compute_session(plan, session_of(plan, "ana", {cap1}));
    CHECK(rs.at("CAp-1").value.number() == doctest::Approx(0.75));
    CHECK(rs.at("CAp-2").value.number() == doctest::Approx(0.75));
    CHECK(rs.at("CAp-2").elements == "o1: A = 2, B = 5; o2: A = 1, B = 10");

    // Two objectives scoring 1.0 and 0.6 give 0.8.
    ElementValues cap2{"CAp-2", {}, {}, {{"o1", {{"A", 0}, {"B", 4}}}, {"o2", {{"A", 2}, {"B", 5}}}}};
    auto rs2 = compute_session(plan, session_of(plan, "ana", {ab("CAp-1", 1, 4), cap2}));
    CHECK(rs2.at("CAp-2").value.number() == doctest::Approx(0.8));
    CHECK(rs2.at("CAp-1").value.number() == doctest::Approx(0.75));

    plan.usage_objectives = {"o1"};
    auto rs3 = compute_session(plan, session_of(plan, "ana", {cap1}));
    CHECK(rs3.at("CAp-1").value.warnings.size() == 1);
}

TEST_CASE("entries must belong to the plan") {
    auto plan = coverage_plan();
    CHECK_THROWS_AS(compute_session(plan, session_of(plan, "ana", {ab("UAp-1", 1, 2)})), UnselectedMeasure);
    CHECK_THROWS_AS(compute_session(plan, session_of(plan, "ana", {ab("QQq-1", 1, 2)})), UnknownMeasure);
    auto other = session_of(plan, "ana", {ab("CCp-1", 1, 2)});
    other.plan_id = "elsewhere";
    CHECK_THROWS_AS(consolidate(plan, {other}), MixedPlan);
    CHECK_THROWS_AS(consolidate(plan, {}), EmptySessionSet);
}

TEST_CASE("session JSON") {
    const char* text = R"({
  "schema": "mqes-v1",
  "plan_id": "OntoM",
  "evaluator": "ana",
  "recorded_at": "2026-10-14T09:30:00Z",
  "entries": {
    "CCp-1": {"A": 1, "B": 20},
    "CCc-1": ["Task", "Gateway"],
    "CCc-2": [{"concept": "Task", "foundation": "BPMN task"}],
    "CAp-1": {"objectives": {"o1": {"A": 2, "B": 5}}}
  },
  "candidates": {"CCp-1": {"B": 12, "note": "check"}}
})";
    auto load = parse_session_json(text);
    CHECK(load.findings.empty());
    const auto& s = load.session;
    CHECK(s.evaluator == "ana");
    CHECK(s.find_entry("CCp-1")->numeric.at("B") == 20);
    CHECK(s.find_entry("CCc-2")->nominal_items == std::vector<std::string>{"Task → BPMN task"});
    CHECK(s.find_entry("CAp-1")->per_objective.size() == 1);
    REQUIRE(s.candidates.size() == 1);
    CHECK(s.candidates[0].value == 12);
    auto back = parse_session_json(serialize_session_json(s));
    CHECK(back.session == s);
}

TEST_CASE("re-recorded entries warn and the last one wins") {
    auto load = parse_session_json(
        R"({"schema": "mqes-v1", "plan_id": "OntoM", "evaluator": "ana",
            "entries": {"CCp-1": {"A": 3, "B": 20}, "CCp-1": {"A": 0, "B": 20}}})");
    REQUIRE(load.findings.size() == 1);
    CHECK(load.findings[0].code == "re-recorded");
    CHECK(load.findings[0].severity == Severity::Warning);
    CHECK(load.findings[0].subject == "CCp-1");
    REQUIRE(load.session.entries.size() == 1);
    CHECK(load.session.entries[0].numeric.at("A") == 0);
}

TEST_CASE("session JSON failures") {
    CHECK_THROWS_AS(parse_session_json(R"({"schema": "mqes-v1", "evaluator": "ana"})"), FormatError);
    CHECK_THROWS_AS(parse_session_json(R"({"schema": "mqes-v1", "plan_id": "p"})"), FormatError);
    CHECK_THROWS_AS(parse_session_json(R"({"schema": "x", "plan_id": "p", "evaluator": "e"})"), FormatError);
    CHECK_THROWS_AS(
        parse_session_json(R"({"schema": "mqes-v1", "plan_id": "p", "evaluator": "e", "entries": {"CCp-1": 3}})"),
        FormatError);
    CHECK_THROWS_AS(parse_session_json(
                        R"({"schema": "mqes-v1", "plan_id": "p", "evaluator": "e", "entries": {"CCp-1": {"A": "1"}}})"),
                    FormatError);
    auto load = parse_session_json(R"({"schema": "mqes-v1", "plan_id": "p", "evaluator": "e", "recorded_at": "noon"})");
    REQUIRE(load.findings.size() == 1);
    CHECK(load.findings[0].code == "timestamp-format");
}

TEST_CASE("consolidation of two evaluators") {
    auto plan = wide_plan();
    auto a = session_of(plan, "ben", {ab("CCp-1", 2, 20), ElementValues{"CCc-1", {}, {"Task", "Gate"}, {}}});
    auto b = session_of(plan, "ana", {ab("CCp-1", 4, 20), ElementValues{"CCc-1", {}, {"Task", "Lane"}, {}}});
    auto rs = consolidate(plan, {a, b});
    const auto& c = rs.at("CCp-1");
    CHECK(c.value.number() == doctest::Approx(0.85));
    CHECK(c.status == MeasureStatus::Acceptable);
    CHECK(c.elements == "consolidated from 2 evaluators");
    REQUIRE(c.per_evaluator.size() == 2);
    CHECK(c.per_evaluator[0].evaluator == "ana");
    CHECK(rs.at("CCc-1").value.items() == std::vector<std::string>{"Gate", "Lane", "Task"});

    auto na = consolidate(plan, {session_of(plan, "a", {ab("CCr-1", 0, 0)}), session_of(plan, "b", {ab("CCr-1", 0, 0)})});
    CHECK(na.at("CCr-1").value.is_not_applicable());
    CHECK(na.at("CCr-1").status == MeasureStatus::NotApplicable);

    auto flagged = consolidate(plan, {session_of(plan, "a", {ab("CCr-1", 3, 2)}), session_of(plan, "b", {ab("CCr-1", 0, 2)})});
    CHECK(flagged.at("CCr-1").value.inconsistent);
    CHECK(flagged.at("CCr-1").status == MeasureStatus::Failed);
}

TEST_CASE("consolidation properties over random session sets") {
    auto plan = wide_plan();
    const auto& cat = load_builtin_catalog();
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 200; ++round) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        std::vector<MeasurementSession> sessions;
        for (std::size_t i = 0; i < n; ++i) sessions.push_back(oracle::random_session(plan, "e" + std::to_string(i), rng));

        auto base = consolidate(plan, sessions);

        if (n == 1) CHECK(base == compute_session(plan, sessions[0]));

        auto shuffled = sessions;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(consolidate(plan, shuffled) == base);

        for (const auto& [id, r] : base) {
            if (!r.value.is_numeric()) continue;
            double lo = 1e300, hi = -1e300;
            for (const auto& s : sessions) {
                auto single = compute_session(plan, s);
                auto it = single.find(id);
                if (it == single.end() || !it->second.value.is_numeric()) continue;
                lo = std::min(lo, it->second.value.number());
                hi = std::max(hi, it->second.value.number());
            }
            CAPTURE(id);
            CHECK(r.value.number() >= lo);
            CHECK(r.value.number() <= hi);
            const auto& m = cat.measure(id);
            auto crit = plan.criteria.find(id);
            CHECK(r.status == assess(r.value, crit == plan.criteria.end() ? nullptr : &crit->second, m.orientation));
        }
    }
}

TEST_CASE("element descriptions") {
    CHECK(describe_elements(ab("CCp-1", 0, 20)) == "A = 0, B = 20");
    CHECK(describe_elements({"CCc-1", {}, {"a", "b"}, {}}) == "2 item(s)");
    CHECK(describe_elements({"CCc-1", {}, {}, {}}) == "(none)");
    CHECK(traceability_item("Task", "BPMN task") == "Task → BPMN task");
}
