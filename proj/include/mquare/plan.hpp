#pragma once

// Machine-readable evaluation plan ("mqep-v1") and its validation rules.

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mquare/catalog.hpp"
#include "mquare/error.hpp"
#include "mquare/finding.hpp"
#include "mquare/measurement.hpp"

namespace mquare {

enum class MetamodelVersion { Intermediate, Final };

std::string_view to_string(MetamodelVersion version);  ///< "intermediate" | "final"
std::optional<MetamodelVersion> parse_metamodel_version(std::string_view token);

enum class PurposeCode {
    IntermediateAssureQuality,
    IntermediateAccept,
    IntermediateFeasibility,
    IntermediatePredict,
    IntermediateImprove,
    IntermediateControl,
    FinalAccept,
    FinalCompare,
    FinalSelect,
    FinalAssessEffects,
    FinalImprove,
};

struct PurposeInfo {
    PurposeCode code;
    std::string_view token;  ///< e.g. "FINAL_ACCEPT"
    MetamodelVersion version;
    std::string_view text;
};

std::span<const PurposeInfo> all_purposes();
const PurposeInfo& purpose_info(PurposeCode code);
std::optional<PurposeCode> parse_purpose(std::string_view token);
std::vector<PurposeCode> purposes_for(MetamodelVersion version);

struct ScheduleEntry {
    std::string activity;
    std::string evaluator;
    std::string start_date;
    std::string end_date;
    friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct EvaluationPlan {
    std::string plan_id;  ///< defaults to metamodel_id when empty
    std::string metamodel_id;
    std::string requester;
    std::string date;  ///< YYYY-MM-DD
    MetamodelVersion version = MetamodelVersion::Final;
    std::set<PurposeCode> purposes;
    std::set<ArtifactKind> artifacts_available;
    std::string resources;
    std::set<std::string> selected_requirements;
    std::set<std::string> selected_measures;
    std::map<std::string, MeasureCriteria> criteria;
    std::map<std::string, std::string> sub_characteristic_formulas;  ///< "CAp" -> formula
    std::map<std::string, std::string> characteristic_formulas;      ///< "CS" -> formula
    std::vector<std::string> usage_objectives;
    std::vector<ScheduleEntry> schedule;
    std::optional<std::string> baseline_results_ref;
    /// Concepts the specification requires to be independent (MMo-1 basis).
    std::vector<std::string> required_independent_concepts;

    const std::string& id() const { return plan_id.empty() ? metamodel_id : plan_id; }
    std::vector<PurposeCode> selectable_purposes() const { return purposes_for(version); }

    friend bool operator==(const EvaluationPlan&, const EvaluationPlan&) = default;
};

/// Skeleton plan: empty selections, the given (or today's) date.
EvaluationPlan init_plan(std::string metamodel_id, MetamodelVersion version,
                         std::optional<std::string> date = std::nullopt);

/// Empty iff the plan satisfies every plan invariant; one finding per violation.
std::vector<ValidationFinding> validate_plan(const EvaluationPlan& plan, const Catalog& catalog);

class PlanInvalid : public Error {
public:
    explicit PlanInvalid(std::vector<ValidationFinding> findings);
    const std::vector<ValidationFinding>& findings() const noexcept { return findings_; }

private:
    std::vector<ValidationFinding> findings_;
};

/// Human-readable plan document with the seven numbered plan sections.
/// Throws PlanInvalid when validation reports an ERROR.
std::string render_plan_document(const EvaluationPlan& plan, const Catalog& catalog);

struct PlanLoad {
    EvaluationPlan plan;
    std::vector<ValidationFinding> findings;  ///< unknown fields, unknown tokens
};

PlanLoad parse_plan_json(std::string_view text);
std::string serialize_plan_json(const EvaluationPlan& plan);

bool is_iso_date(std::string_view text);
std::string today_iso_date();

}  // namespace mquare
