#pragma once

// Scorecard assembly: per-measure rows, formula aggregation up the quality
// model, and the overall verdict. Serialized as "mqer-v1".

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mquare/catalog.hpp"
#include "mquare/error.hpp"
#include "mquare/measurement.hpp"
#include "mquare/plan.hpp"

namespace mquare {

struct EvaluatorValue {
    std::string evaluator;
    MeasureValue value;
    std::string elements;
    friend bool operator==(const EvaluatorValue&, const EvaluatorValue&) = default;
};

struct MeasureResult {
    MeasureValue value;
    MeasureStatus status = MeasureStatus::NotApplicable;
    std::string elements;  ///< recorded inputs as text, e.g. "A = 0, B = 20"
    std::vector<EvaluatorValue> per_evaluator;  ///< sorted by evaluator
    friend bool operator==(const MeasureResult&, const MeasureResult&) = default;
};

/// Keyed by measure id.
using ResultSet = std::map<std::string, MeasureResult>;

enum class Verdict { AllTargetsMet, Acceptable, Failed, Inconclusive };

std::string_view to_string(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view token);

struct ScorecardRow {
    std::string characteristic;      ///< characteristic id
    std::string sub_characteristic;  ///< sub-characteristic id
    std::string measure;             ///< measure id
    std::vector<std::string> requirements;
    std::string elements;
    MeasureValue measured;
    MeasureValue final_value;  ///< the measured value carried forward
    MeasureStatus status = MeasureStatus::NotApplicable;
    std::vector<EvaluatorValue> per_evaluator;
    friend bool operator==(const ScorecardRow&, const ScorecardRow&) = default;
};

/// A sub-characteristic or characteristic grade. `value` is Numeric or
/// NotApplicable; its warnings explain exclusions.
struct AggregateValue {
    std::string id;
    MeasureValue value;
    std::string formula;
    bool explicit_formula = false;
    friend bool operator==(const AggregateValue&, const AggregateValue&) = default;
};

struct Scorecard {
    std::string plan_id;
    std::string metamodel_id;
    std::vector<ScorecardRow> rows;  ///< catalog order
    std::vector<AggregateValue> sub_characteristics;
    std::vector<AggregateValue> characteristics;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> warnings;

    const ScorecardRow* find_row(std::string_view measure_id) const;
    const AggregateValue* find_sub_characteristic(std::string_view id) const;
    const AggregateValue* find_characteristic(std::string_view id) const;

    friend bool operator==(const Scorecard&, const Scorecard&) = default;
};

class MissingResult : public Error {
public:
    explicit MissingResult(std::string measure_id);
    const std::string& measure_id() const noexcept { return measure_id_; }

private:
    std::string measure_id_;
};

/// A formula error tagged with the plan field holding the formula.
class FormulaEvaluationError : public Error {
public:
    FormulaEvaluationError(std::string location, const std::string& message);
    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

struct FormulaInput {
    std::string name;
    MeasureValue value;
    bool unbounded = false;  ///< range is not [0, 1]; excluded from the mean
};

/// Mean of applicable numeric inputs. NotApplicable when nothing remains.
MeasureValue default_formula(const std::vector<FormulaInput>& inputs);

/// Verdict over a set of statuses.
Verdict verdict_for(const std::vector<MeasureStatus>& statuses);

Scorecard build_scorecard(const EvaluationPlan& plan, const ResultSet& results,
                          const Catalog& catalog = load_builtin_catalog());

std::string serialize_scorecard_json(const Scorecard& scorecard);
Scorecard parse_scorecard_json(std::string_view text);

}  // namespace mquare
