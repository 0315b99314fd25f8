#pragma once

// Recorded measure elements ("mqes-v1"), per-session results and
// multi-evaluator consolidation.

#include <string>
#include <string_view>
#include <vector>

#include "mquare/catalog.hpp"
#include "mquare/error.hpp"
#include "mquare/finding.hpp"
#include "mquare/measurement.hpp"
#include "mquare/plan.hpp"
#include "mquare/scoring.hpp"

namespace mquare {

/// Advisory element value proposed by the analyzer; never used as data.
struct CandidateElement {
    std::string measure_id;
    std::string element;
    double value = 0.0;
    std::string note;
    friend bool operator==(const CandidateElement&, const CandidateElement&) = default;
};

struct MeasurementSession {
    std::string plan_id;
    std::string evaluator;
    std::string recorded_at;  ///< ISO-8601 timestamp; may be empty
    std::string notes;
    std::vector<ElementValues> entries;  ///< at most one per measure
    std::vector<CandidateElement> candidates;

    const ElementValues* find_entry(std::string_view measure_id) const;
    friend bool operator==(const MeasurementSession&, const MeasurementSession&) = default;
};

struct SessionLoad {
    MeasurementSession session;
    std::vector<ValidationFinding> findings;  ///< re-recorded entries, unknown fields
};

SessionLoad parse_session_json(std::string_view text);
std::string serialize_session_json(const MeasurementSession& session);

/// Text form of a CCc-2 pair.
std::string traceability_item(const std::string& concept_name, const std::string& foundation);

class UnselectedMeasure : public Error {
public:
    explicit UnselectedMeasure(std::string measure_id);
    const std::string& measure_id() const noexcept { return measure_id_; }

private:
    std::string measure_id_;
};

class EmptySessionSet : public Error {
public:
    EmptySessionSet() : Error("no measurement sessions given") {}
};

class MixedPlan : public Error {
public:
    using Error::Error;
};

/// "A = 0, B = 20"; objectives as "o1: A = 2, B = 5; o2: ...".
std::string describe_elements(const ElementValues& elements);

/// Values and statuses for every entry of one session. CAp-2 is derived
/// from CAp-1's usage objectives when selected and not recorded directly.
ResultSet compute_session(const EvaluationPlan& plan, const MeasurementSession& session,
                          const Catalog& catalog = load_builtin_catalog());

/// Merges sessions of one plan. A single session passes through unchanged.
/// For several, numeric values are averaged, nominal items united, and the
/// status recomputed from the plan's criteria.
ResultSet consolidate(const EvaluationPlan& plan, const std::vector<MeasurementSession>& sessions,
                      const Catalog& catalog = load_builtin_catalog());

Scorecard evaluate(const EvaluationPlan& plan, const ResultSet& consolidated,
                   const Catalog& catalog = load_builtin_catalog());

}  // namespace mquare
