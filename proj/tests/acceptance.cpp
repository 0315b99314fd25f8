// Acceptance run: one PASS/FAIL line per criterion. Tolerances and sizes are
// fixed here so a run is reproducible.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "mquare/catalog.hpp"
#include "mquare/cli.hpp"
#include "mquare/format.hpp"
#include "mquare/formula.hpp"
#include "mquare/metamodel.hpp"
#include "mquare/plan.hpp"
#include "mquare/scoring.hpp"
#include "mquare/session.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"
#include "support.hpp"

using namespace mquare;
namespace fs = std::filesystem;

namespace {

constexpr double kFormulaTolerance = 1e-12;  // worked formulas
constexpr double kOracleTolerance = 1e-9;    // random formulas vs reference interpreter
constexpr int kRangeSamples = 10000;
constexpr long kMaxCount = 1000000;
constexpr int kRandomFormulas = 1000;
constexpr int kConsolidationRounds = 300;
constexpr std::size_t kMaxMandatoryElements = 6;
constexpr double kTimeBudgetSeconds = 1.0;
constexpr std::uint64_t kSeed = 20261014;

/// Collects failure reasons for one criterion.
struct Check {
    std::vector<std::string> failures;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok) ++failed;
    }
    int failed = 0;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

const Catalog& cat() { return load_builtin_catalog(); }

// 1 ---------------------------------------------------------------------------

void coverage_example(Check& c) {
    auto plan = parse_plan_json(R"({
      "schema": "mqep-v1", "metamodel_id": "OntoM", "date": "2026-10-14", "version": "final",
      "purposes": ["FINAL_ACCEPT"], "artifacts_available": ["SPECIFICATIONS", "IMPLEMENTATION"],
      "selected_requirements": ["MQR02"], "selected_measures": ["CCp-1"],
      "criteria": {"CCp-1": {"target_value": 1, "acceptable_tolerance_value": 0.75}}})");
    c.expect(plan.findings.empty() && validate_plan(plan.plan, cat()).empty(), "plan does not validate cleanly");
    auto session = parse_session_json(R"({"schema": "mqes-v1", "plan_id": "OntoM", "evaluator": "e1",
      "entries": {"CCp-1": {"A": 0, "B": 20}}})");
    auto card = evaluate(plan.plan, consolidate(plan.plan, {session.session}));
    const auto* row = card.find_row("CCp-1");
    if (!row) {
        c.expect(false, "no CCp-1 row");
        return;
    }
    const auto& m = cat().measure("CCp-1");
    c.expect(row->measured.is_numeric() && row->measured.number() == 1.0, "measured value is not 1");
    c.expect(format_value(row->final_value, m) == "1.0", "final measurement value is not 1.0");
    const auto* sub = card.find_sub_characteristic("CCp");
    c.expect(sub && sub->value.is_numeric() && format_number(sub->value.number()) == "1.0",
             "sub-characteristic value is not 1.0");
    c.expect(row->status == MeasureStatus::TargetMet, "status is " + std::string(to_string(row->status)));
    c.detail = "measured " + num(row->measured.number()) + ", final " + format_value(row->final_value, m) + ", " +
               std::string(to_string(row->status));
}

// 2 ---------------------------------------------------------------------------

void worked_formulas(Check& c) {
    std::map<std::string, double> env{{"CCp1", 1.0}, {"CCr1", 0.8}, {"CAp1", 0.6}, {"CAp2", 0.9}};
    double cap = evaluate_formula(parse_formula("(CAp1 + CAp2) / 2"), env);
    env["CAp"] = cap;
    double cs = evaluate_formula(parse_formula("(CCp1 + CCr1 + CAp) / 3"), env);
    c.expect(std::fabs(cap - 0.75) <= kFormulaTolerance, "CAp = " + num(cap));
    c.expect(std::fabs(cs - 0.85) <= kFormulaTolerance, "CS = " + num(cs));

    // The same numbers through the scorecard.
    auto plan = test_support::plan_for({"MQR02", "MQR03", "MQR04"});
    plan.sub_characteristic_formulas["CAp"] = "(CAp1 + CAp2) / 2";
    plan.characteristic_formulas["CS"] = "(CCp1 + CCr1 + CAp) / 3";
    ResultSet rs;
    for (auto [id, v] : std::map<std::string, double>{{"CCp-1", 1.0}, {"CCr-1", 0.8}, {"CAp-1", 0.6}, {"CAp-2", 0.9}})
        rs[id] = {MeasureValue::numeric(v), MeasureStatus::Acceptable, "", {}};
    auto card = build_scorecard(plan, rs);
    c.expect(std::fabs(card.find_sub_characteristic("CAp")->value.number() - 0.75) <= kFormulaTolerance,
             "scorecard CAp differs");
    c.expect(std::fabs(card.find_characteristic("CS")->value.number() - 0.85) <= kFormulaTolerance,
             "scorecard CS differs");
    c.detail = "CAp " + num(cap) + ", CS " + num(cs);
}

// 3 ---------------------------------------------------------------------------

void census(Check& c) {
    const auto& k = cat();
    c.expect(k.characteristics().size() == 5, "characteristics: " + std::to_string(k.characteristics().size()));
    c.expect(k.sub_characteristics().size() == 10,
             "sub-characteristics: " + std::to_string(k.sub_characteristics().size()) + ", expected 10");
    c.expect(k.requirements().size() == 19, "requirements: " + std::to_string(k.requirements().size()));
    c.expect(k.measures().size() == 23, "measures: " + std::to_string(k.measures().size()));
    std::map<MeasureKind, int> kinds;
    for (const auto& m : k.measures()) ++kinds[m.kind];
    c.expect(kinds[MeasureKind::Nominal] == 2, "NOMINAL count");
    c.expect(kinds[MeasureKind::OneMinusRatio] == 8, "ONE_MINUS_RATIO count");
    c.expect(kinds[MeasureKind::Ratio] == 11, "RATIO count");
    c.expect(kinds[MeasureKind::Difference] == 1, "DIFFERENCE count");
    c.expect(kinds[MeasureKind::MeanOfDependent] == 1, "MEAN_OF_DEPENDENT count");
    int rows = 0;
    for (const auto& [req, measures] : reference::kRequirementMeasures) {
        c.expect(k.measures_for_requirement(req) == measures, req + " measures differ");
        ++rows;
    }
    c.expect(rows == 19, "mapping rows");
    c.detail = std::to_string(k.characteristics().size()) + "/" + std::to_string(k.sub_characteristics().size()) +
               "/" + std::to_string(k.requirements().size()) + "/" + std::to_string(k.measures().size()) +
               ", mapping rows " + std::to_string(rows);
}

// 4 ---------------------------------------------------------------------------

EvaluationPlan minimal_plan(const std::string& req) {
    auto plan = test_support::plan_for({req});
    if (plan.selected_measures.count("CAp-1")) plan.usage_objectives = {"o1"};
    if (plan.selected_measures.count("PRe-2")) plan.baseline_results_ref = "baseline.json";
    if (plan.selected_measures.count("MMo-1")) plan.required_independent_concepts = {"Task"};
    return plan;
}

void artifact_matrix(Check& c) {
    int positive = 0, negative = 0;
    for (const auto& [req, artifacts] : reference::kRequirementArtifacts) {
        auto plan = minimal_plan(req);
        c.expect(plan.artifacts_available == artifacts, req + " artifact set differs");
        auto fs = validate_plan(plan, cat());
        c.expect(fs.empty(), req + " minimal plan has " + std::to_string(fs.size()) + " finding(s)");
        ++positive;
        for (auto kind : artifacts) {
            auto p = plan;
            p.artifacts_available.erase(kind);
            auto f = validate_plan(p, cat());
            c.expect(f.size() == 1 && f[0].severity == Severity::Error && f[0].code == "artifact-missing",
                     req + " without " + std::string(to_string(kind)));
            ++negative;
        }
    }
    c.detail = std::to_string(positive) + " positive, " + std::to_string(negative) + " negative";
}

// 5 ---------------------------------------------------------------------------

void ratio_range(Check& c) {
    std::mt19937_64 rng(kSeed);
    std::vector<const MeasureSpec*> ratio;
    for (const auto& m : cat().measures())
        if (m.is_ratio_family() && m.kind != MeasureKind::MeanOfDependent) ratio.push_back(&m);
    long values = 0;
    for (int i = 0; i < kRangeSamples; ++i) {
        long b = std::uniform_int_distribution<long>(1, kMaxCount)(rng);
        long a = std::uniform_int_distribution<long>(0, b)(rng);
        for (const auto* m : ratio) {
            ElementValues e{m->id, {{"A", double(a)}, {"B", double(b)}}, {}, {}};
            auto v = compute_measure(*m, e);
            c.expect(v.is_numeric() && v.number() >= 0.0 && v.number() <= 1.0,
                     m->id + " out of range for A=" + std::to_string(a) + " B=" + std::to_string(b));
            e.numeric["B"] = 0;
            c.expect(compute_measure(*m, e).is_not_applicable(), m->id + " with B=0 is applicable");
            ++values;
        }
        // The dependent mean over per-objective ratios stays in range too.
        ElementValues dep{"CAp-2", {}, {}, {{"o1", {{"A", double(a)}, {"B", double(b)}}}}};
        auto v = compute_measure(cat().measure("CAp-2"), dep);
        c.expect(v.is_numeric() && v.number() >= 0.0 && v.number() <= 1.0, "CAp-2 out of range");
    }
    c.detail = std::to_string(kRangeSamples) + " pairs x " + std::to_string(ratio.size()) + " measures";
}

// 6 ---------------------------------------------------------------------------

void formula_oracle(Check& c) {
    std::mt19937_64 rng(kSeed);
    int agree = 0, div_zero = 0;
    for (int i = 0; i < kRandomFormulas; ++i) {
        auto tree = oracle::random_tree(rng, 6);
        auto text = oracle::render(*tree, rng);
        auto env = oracle::random_env(rng);
        auto expected = oracle::interpret(*tree, env);
        try {
            double got = evaluate_formula(parse_formula(text), env);
            c.expect(expected && oracle::close(got, *expected, kOracleTolerance), "mismatch on " + text);
            if (expected) ++agree;
        } catch (const DivisionByZero&) {
            c.expect(!expected, "unexpected division by zero in " + text);
            ++div_zero;
        }
    }
    c.detail = std::to_string(agree) + " agree, " + std::to_string(div_zero) + " division by zero on both sides";
}

// 7 ---------------------------------------------------------------------------

void instantiation_oracle(Check& c) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(test_support::fixture("mmdl")))
        if (e.path().extension() == ".mmdl") files.push_back(e.path());
    files.push_back(test_support::source_path("samples/worked/metamodel.mmdl"));
    std::sort(files.begin(), files.end());
    int compared = 0;
    bool saw_collapse = false;
    for (const auto& f : files) {
        auto g = parse_mmdl(test_support::read_text(f.string()));
        InstantiationComplexity ic;
        try {
            ic = instantiation_complexity(g);
        } catch (const MandatoryContainmentCycle&) {
            continue;  // no valid creation order exists
        } catch (const NoRoot&) {
            continue;
        }
        if (static_cast<std::size_t>(ic.a) > kMaxMandatoryElements) continue;
        auto brute = oracle::enumerate(oracle::mandatory_slots(g));
        c.expect(brute.a == ic.a && brute.b == ic.b && brute.x == ic.x,
                 f.filename().string() + ": enumerated (" + std::to_string(brute.a) + ", " + std::to_string(brute.b) +
                     ", " + std::to_string(brute.x) + ") vs (" + std::to_string(ic.a) + ", " +
                     std::to_string(ic.b) + ", " + std::to_string(ic.x) + ")");
        for (const auto& e : ic.elements)
            if (e.alternatives.size() > 1) saw_collapse = true;
        ++compared;
    }
    c.expect(saw_collapse, "no fixture exercised hierarchy collapse");
    c.expect(compared >= 8, "only " + std::to_string(compared) + " fixtures compared");
    c.detail = std::to_string(compared) + " metamodels";
}

// 8 ---------------------------------------------------------------------------

void consolidation(Check& c) {
    auto plan = test_support::plan_for({"MQR01", "MQR02", "MQR03", "MQR05", "MQR11", "MQR13", "MQR15", "MQR16"});
    std::mt19937_64 rng(kSeed);
    int sets = 0;
    for (int round = 0; round < kConsolidationRounds; ++round) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        std::vector<MeasurementSession> sessions;
        for (std::size_t i = 0; i < n; ++i)
            sessions.push_back(oracle::random_session(plan, "evaluator-" + std::to_string(i), rng));
        auto base = consolidate(plan, sessions);
        if (n == 1) c.expect(base == compute_session(plan, sessions[0]), "singleton is not the identity");
        for (int k = 0; k < 3; ++k) {
            auto perm = sessions;
            std::shuffle(perm.begin(), perm.end(), rng);
            c.expect(consolidate(plan, perm) == base, "result depends on session order");
        }
        std::vector<ResultSet> singles;
        for (const auto& s : sessions) singles.push_back(compute_session(plan, s));
        for (const auto& [id, r] : base) {
            if (!r.value.is_numeric()) continue;
            double lo = INFINITY, hi = -INFINITY;
            for (const auto& single : singles) {
                auto it = single.find(id);
                if (it == single.end() || !it->second.value.is_numeric()) continue;
                lo = std::min(lo, it->second.value.number());
                hi = std::max(hi, it->second.value.number());
            }
            c.expect(r.value.number() >= lo && r.value.number() <= hi, id + " outside per-session bounds");
        }
        ++sets;
    }
    c.detail = std::to_string(sets) + " random session sets";
}

// 9 ---------------------------------------------------------------------------

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("mquare-acceptance-" + std::to_string(::getpid()) + "-" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

/// analyze + evaluate + report into `dir`; returns the CLI exit codes.
std::vector<int> pipeline(const fs::path& dir) {
    auto sample = [](const char* name) { return test_support::source_path(std::string("samples/worked/") + name); };
    std::ostringstream out, err;
    std::vector<int> codes;
    codes.push_back(run_cli({"analyze", sample("metamodel.mmdl"), "--plan", sample("plan.json"), "--out",
                             (dir / "analyzer.json").string()},
                            out, err));
    codes.push_back(run_cli({"evaluate", "--plan", sample("plan.json"), "--session", sample("session.json"),
                             "--session", (dir / "analyzer.json").string(), "--out", (dir / "scorecard.json").string()},
                            out, err));
    codes.push_back(run_cli({"report", "--plan", sample("plan.json"), "--scorecard", (dir / "scorecard.json").string(),
                             "--meta", sample("meta.json"), "--out", (dir / "report.md").string()},
                            out, err));
    return codes;
}

void end_to_end(Check& c) {
    TempDir one("run1"), two("run2");
    auto a = pipeline(one.path);
    auto b = pipeline(two.path);
    c.expect(a == std::vector<int>{0, 0, 0} && b == a, "pipeline exit codes differ from 0");
    for (const char* name : {"analyzer.json", "scorecard.json", "report.md"}) {
        auto x = test_support::read_text((one.path / name).string());
        auto y = test_support::read_text((two.path / name).string());
        c.expect(!x.empty() && x == y, std::string(name) + " differs between runs");
    }
    auto report = test_support::read_text((one.path / "report.md").string());
    const char* headings[] = {"## 1. Quality evaluation plan", "## 2. The evaluators and their qualifications",
                              "## 3. Problems or workarounds in adverse events",
                              "## 4. The results from the measurements and analyses performed",
                              "## 5. Result of the evaluation"};
    std::size_t at = 0;
    for (const char* h : headings) {
        auto pos = report.find(std::string("\n") + h + "\n", at);
        c.expect(pos != std::string::npos, std::string("missing or out of order: ") + h);
        if (pos != std::string::npos) at = pos + 1;
    }
    c.detail = std::to_string(report.size()) + " byte report";
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> expect_fail;
    app.add_option("--expect-fail", expect_fail, "Criteria known to fail; the run succeeds only if exactly these fail");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "coverage example reproduces the measurement table row", coverage_example},
        {2, "worked aggregation formulas", worked_formulas},
        {3, "catalog census and requirement mapping", census},
        {4, "requirement artifact matrix", artifact_matrix},
        {5, "ratio-family range property", ratio_range},
        {6, "random formula oracle", formula_oracle},
        {7, "instantiation complexity oracle", instantiation_oracle},
        {8, "consolidation properties", consolidation},
        {9, "end-to-end determinism", end_to_end},
    };

    std::set<int> failed;
    for (const auto& cr : criteria) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            cr.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.expect(secs <= kTimeBudgetSeconds, "took " + num(secs) + " s");
        bool ok = check.failed == 0;
        if (!ok) failed.insert(cr.id);
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.3fs", secs);
        std::cout << (ok ? "PASS" : "FAIL") << " " << cr.id << " " << cr.name << " [" << timing << "]";
        if (!check.detail.empty()) std::cout << ": " << check.detail;
        std::cout << "\n";
        for (const auto& f : check.failures) std::cout << "     " << f << "\n";
    }

    std::set<int> expected(expect_fail.begin(), expect_fail.end());
    if (!expected.empty()) {
        std::cout << (failed == expected ? "failures match the expected set\n"
                                         : "failures do not match the expected set\n");
        return failed == expected ? 0 : 1;
    }
    return failed.empty() ? 0 : 1;
}
