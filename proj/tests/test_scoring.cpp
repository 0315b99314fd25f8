#include <random>

#include "doctest.h"
#include "mquare/scoring.hpp"
#include "mquare/session.hpp"
#include "support.hpp"

using namespace mquare;
using test_support::coverage_plan;
using test_support::plan_for;

namespace {

MeasureResult result(MeasureValue v, MeasureStatus s, std::string elements = "") {
    return {std::move(v), s, std::move(elements), {}};
}

/// Plan for conceptual suitability with the worked formulas.
EvaluationPlan suitability_plan() {
    auto plan = plan_for({"MQR02", "MQR03", "MQR04"});
    plan.sub_characteristic_formulas["CAp"] = "(CAp1 + CAp2) / 2";
    plan.characteristic_formulas["CS"] = "(CCp1 + CCr1 + CAp) / 3";
    return plan;
}

ResultSet suitability_results() {
    return {{"CCp-1", result(MeasureValue::numeric(1.0), MeasureStatus::TargetMet)},
            {"CCr-1", result(MeasureValue::numeric(0.8), MeasureStatus::Acceptable)},
            {"CAp-1", result(MeasureValue::numeric(0.6), MeasureStatus::Failed)},
            {"CAp-2", result(MeasureValue::numeric(0.9), MeasureStatus::Acceptable)}};
}

}  // namespace

TEST_CASE("single coverage measure scorecard") {
    auto plan = coverage_plan();
    ResultSet rs{{"CCp-1", result(MeasureValue::numeric(1.0), MeasureStatus::TargetMet, "A = 0, B = 20")}};
    auto card = build_scorecard(plan, rs);
    REQUIRE(card.rows.size() == 1);
    const auto& row = card.rows[0];
    CHECK(row.characteristic == "CS");
    CHECK(row.sub_characteristic == "CCp");
    CHECK(row.requirements == std::vector<std::string>{"MQR02"});
    CHECK(row.measured.number() == 1.0);
    CHECK(row.final_value.number() == 1.0);
    CHECK(row.status == MeasureStatus::TargetMet);
    REQUIRE(card.find_sub_characteristic("CCp"));
    CHECK(card.find_sub_characteristic("CCp")->value.number() == 1.0);
    CHECK(card.find_characteristic("CS")->value.number() == 1.0);
    CHECK(card.verdict == Verdict::AllTargetsMet);
    CHECK(card.warnings.empty());
}

TEST_CASE("explicit formulas for appropriateness and suitability") {
    auto card = build_scorecard(suitability_plan(), suitability_results());
    const auto* cap = card.find_sub_characteristic("CAp");
    REQUIRE(cap);
    CHECK(cap->explicit_formula);
    CHECK(std::fabs(cap->value.number() - 0.75) <= 1e-12);
    const auto* cs = card.find_characteristic("CS");
    REQUIRE(cs);
    CHECK(std::fabs(cs->value.number() - 0.85) <= 1e-12);
    CHECK(card.find_sub_characteristic("CCr")->formula == "mean(CCr1)");
    CHECK(card.verdict == Verdict::Failed);
    std::vector<std::string> order;
    for (const auto& r : card.rows) order.push_back(r.measure);
    CHECK(order == std::vector<std::string>{"CCp-1", "CCr-1", "CAp-1", "CAp-2"});
}

TEST_CASE("default characteristic value is the mean of its sub-characteristics") {
    auto plan = suitability_plan();
    plan.characteristic_formulas.clear();
    plan.sub_characteristic_formulas.clear();
    auto card = build_scorecard(plan, suitability_results());
    CHECK(card.find_sub_characteristic("CAp")->value.number() == doctest::Approx(0.75));
    CHECK(card.find_characteristic("CS")->value.number() == doctest::Approx((1.0 + 0.8 + 0.75) / 3));
    CHECK_FALSE(card.find_characteristic("CS")->explicit_formula);
}

TEST_CASE("unbounded measures stay out of the default mean") {
    auto plan = plan_for({"MQR10", "MQR11"});
    ResultSet rs{{"MMo-1", result(MeasureValue::numeric(0.5), MeasureStatus::Failed)},
                 {"MMo-2", result(MeasureValue::numeric(2), MeasureStatus::Acceptable)}};
    auto card = build_scorecard(plan, rs);
    const auto* mmo = card.find_sub_characteristic("MMo");
    CHECK(mmo->value.number() == 0.5);
    CHECK(mmo->formula == "mean(MMo1)");
    CHECK(mmo->value.warnings.size() == 1);
}

TEST_CASE("not applicable handling") {
    auto plan = coverage_plan();
    ResultSet rs{{"CCp-1", result(MeasureValue::not_applicable("B = 0"), MeasureStatus::NotApplicable)}};
    auto card = build_scorecard(plan, rs);
    CHECK(card.find_sub_characteristic("CCp")->value.is_not_applicable());
    CHECK(card.find_characteristic("CS")->value.is_not_applicable());
    CHECK(card.verdict == Verdict::Inconclusive);
    CHECK_FALSE(card.warnings.empty());

    auto sp = suitability_plan();
    auto srs = suitability_results();
    srs["CAp-2"] = result(MeasureValue::not_applicable("no usage objectives"), MeasureStatus::NotApplicable);
    auto c2 = build_scorecard(sp, srs);
    CHECK(c2.find_sub_characteristic("CAp")->value.is_not_applicable());
    CHECK(c2.find_characteristic("CS")->value.is_not_applicable());
}

TEST_CASE("missing and extra results") {
    auto plan = coverage_plan();
    CHECK_THROWS_AS(build_scorecard(plan, {}), MissingResult);
    ResultSet rs{{"CCp-1", result(MeasureValue::numeric(1.0), MeasureStatus::TargetMet)},
                 {"UAp-1", result(MeasureValue::numeric(1.0), MeasureStatus::TargetMet)}};
    auto card = build_scorecard(plan, rs);
    CHECK(card.rows.size() == 1);
    CHECK(card.warnings.size() == 1);
}

TEST_CASE("formula errors name their plan field") {
    auto plan = suitability_plan();
    plan.sub_characteristic_formulas["CAp"] = "CAp1 / (CAp2 - CAp2)";
    try {
        build_scorecard(plan, suitability_results());
        FAIL("expected an error");
    } catch (const FormulaEvaluationError& e) {
        CHECK(e.location() == "sub_characteristic_formulas.CAp");
    }
    plan = suitability_plan();
    plan.characteristic_formulas["CS"] = "CCp1 + Nope";
    CHECK_THROWS_AS(build_scorecard(plan, suitability_results()), FormulaEvaluationError);
}

TEST_CASE("verdict rules") {
    using S = MeasureStatus;
    CHECK(verdict_for({S::TargetMet, S::TargetMet}) == Verdict::AllTargetsMet);
    CHECK(verdict_for({S::TargetMet, S::Informational}) == Verdict::AllTargetsMet);
    CHECK(verdict_for({S::TargetMet, S::Acceptable}) == Verdict::Acceptable);
    CHECK(verdict_for({S::TargetMet, S::Failed, S::Acceptable}) == Verdict::Failed);
    CHECK(verdict_for({S::NotApplicable, S::Informational}) == Verdict::Inconclusive);
    CHECK(verdict_for({}) == Verdict::Inconclusive);
    for (auto v : {Verdict::AllTargetsMet, Verdict::Acceptable, Verdict::Failed, Verdict::Inconclusive})
        CHECK(parse_verdict(to_string(v)) == v);
}

TEST_CASE("verdict is monotone in measure statuses") {
    // Raising any one status never lowers the verdict.
    auto rank = [](Verdict v) {
        switch (v) {
        case Verdict::Failed: return 0;
        case Verdict::Acceptable: return 1;
        case Verdict::AllTargetsMet: return 2;
        default: return -1;
        }
    };
    const MeasureStatus ladder[] = {MeasureStatus::Failed, MeasureStatus::Acceptable, MeasureStatus::TargetMet};
    std::mt19937_64 rng(3);
    for (int i = 0; i < 3000; ++i) {
        std::vector<MeasureStatus> s(std::uniform_int_distribution<int>(1, 6)(rng));
        for (auto& x : s) x = ladder[std::uniform_int_distribution<int>(0, 2)(rng)];
        auto before = verdict_for(s);
        auto& pick = s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)];
        if (pick != MeasureStatus::TargetMet) pick = ladder[*status_rank(pick) + 1];
        CHECK(rank(verdict_for(s)) >= rank(before));
    }
}

TEST_CASE("scorecard JSON round-trip") {
    auto plan = suitability_plan();
    auto rs = suitability_results();
    rs["CCr-1"].per_evaluator = {{"ana", MeasureValue::numeric(0.7), "A = 3, B = 10"},
                                 {"ben", MeasureValue::numeric(0.9), "A = 1, B = 10"}};
    rs["CAp-1"].value.inconsistent = true;
    rs["CAp-1"].value.warnings = {"odd"};
    auto card = build_scorecard(plan, rs);
    auto text = serialize_scorecard_json(card);
    CHECK(text.find("\"schema\": \"mqer-v1\"") != std::string::npos);
    auto back = parse_scorecard_json(text);
    CHECK(back == card);
    CHECK(serialize_scorecard_json(back) == text);
    CHECK_THROWS_AS(parse_scorecard_json("{\"schema\": \"other\"}"), FormatError);
    CHECK_THROWS_AS(parse_scorecard_json("[1"), FormatError);
}

TEST_CASE("default formula") {
    CHECK(default_formula({}).is_not_applicable());
    CHECK(default_formula({{"a", MeasureValue::numeric(0.5)}, {"b", MeasureValue::numeric(1.0)}}).number() ==
          0.75);
    CHECK(default_formula({{"a", MeasureValue::not_applicable("x")}, {"b", MeasureValue::numeric(1.0)}}).number() ==
          1.0);
}
