#pragma once

// Measurement functions and decision criteria.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mquare/catalog.hpp"
#include "mquare/error.hpp"

namespace mquare {

struct ObjectiveElements {
    std::string name;
    std::map<std::string, double> elements;
    friend bool operator==(const ObjectiveElements&, const ObjectiveElements&) = default;
};

/// Raw inputs recorded for one measure.
struct ElementValues {
    std::string measure_id;
    std::map<std::string, double> numeric;  ///< e.g. {"A": 0, "B": 20}
    std::vector<std::string> nominal_items;
    /// CAp-1 evaluated per usage objective; feeds CAp-2.
    std::vector<ObjectiveElements> per_objective;
    friend bool operator==(const ElementValues&, const ElementValues&) = default;
};

struct Numeric {
    double value = 0.0;
    friend bool operator==(const Numeric&, const Numeric&) = default;
};
struct Nominal {
    std::vector<std::string> items;
    friend bool operator==(const Nominal&, const Nominal&) = default;
};
struct NotApplicable {
    std::string reason;
    friend bool operator==(const NotApplicable&, const NotApplicable&) = default;
};

struct MeasureValue {
    std::variant<Numeric, Nominal, NotApplicable> data;
    /// Set when an "A out of B" measure was given A > B. The value is kept
    /// as computed and the status is forced to FAILED.
    bool inconsistent = false;
    std::vector<std::string> warnings;

    static MeasureValue numeric(double v) { return {Numeric{v}, false, {}}; }
    static MeasureValue nominal(std::vector<std::string> items) {
        return {Nominal{std::move(items)}, false, {}};
    }
    static MeasureValue not_applicable(std::string reason) {
        return {NotApplicable{std::move(reason)}, false, {}};
    }

    bool is_numeric() const { return std::holds_alternative<Numeric>(data); }
    bool is_nominal() const { return std::holds_alternative<Nominal>(data); }
    bool is_not_applicable() const { return std::holds_alternative<NotApplicable>(data); }
    double number() const { return std::get<Numeric>(data).value; }
    const std::vector<std::string>& items() const { return std::get<Nominal>(data).items; }
    const std::string& reason() const { return std::get<NotApplicable>(data).reason; }

    friend bool operator==(const MeasureValue&, const MeasureValue&) = default;
};

struct DecisionCriteria {
    double target_value = 1.0;
    double acceptable_tolerance_value = 1.0;
    friend bool operator==(const DecisionCriteria&, const DecisionCriteria&) = default;
};

/// Per-measure criteria as carried in a plan. Nominal measures may only set
/// a minimum item count; numeric ones need the threshold pair.
struct MeasureCriteria {
    std::optional<DecisionCriteria> thresholds;
    std::optional<std::size_t> min_item_count;
    friend bool operator==(const MeasureCriteria&, const MeasureCriteria&) = default;
};

enum class MeasureStatus { TargetMet, Acceptable, Failed, NotApplicable, Informational };

std::string_view to_string(MeasureStatus status);
std::optional<MeasureStatus> parse_measure_status(std::string_view token);

/// Rank used for monotonicity: FAILED < ACCEPTABLE < TARGET_MET. Statuses
/// without a verdict contribution return nullopt.
std::optional<int> status_rank(MeasureStatus status);

class MeasurementError : public Error {
public:
    MeasurementError(std::string measure_id, const std::string& message);
    const std::string& measure_id() const noexcept { return measure_id_; }

private:
    std::string measure_id_;
};

class MissingElement : public MeasurementError {
public:
    MissingElement(std::string measure_id, std::string element);
    const std::string& element() const noexcept { return element_; }

private:
    std::string element_;
};

class WrongKindInput : public MeasurementError {
public:
    using MeasurementError::MeasurementError;
};

/// Negative, non-finite, or non-integral element value.
class InvalidElementValue : public MeasurementError {
public:
    using MeasurementError::MeasurementError;
};

class OutOfRangeInput : public MeasurementError {
public:
    using MeasurementError::MeasurementError;
};

class IllFormedCriteria : public Error {
public:
    using Error::Error;
};

/// Applies the measurement function of `spec` to recorded elements.
///
/// A zero denominator yields NotApplicable. A > B in a ratio-family measure is
/// computed as-is, flagged `inconsistent`, and carries a warning.
MeasureValue compute_measure(const MeasureSpec& spec, const ElementValues& elements);

/// Per-objective CAp-1 values in input order.
std::vector<std::pair<std::string, MeasureValue>> objective_values(const MeasureSpec& cap1,
                                                                   const ElementValues& elements);

/// Mean of per-objective appropriateness scores; each must lie in [0, 1].
MeasureValue compute_cap2(const std::vector<double>& per_objective_values);

bool criteria_well_formed(const DecisionCriteria& criteria, Orientation orientation);

MeasureStatus apply_criteria(const MeasureValue& value, const DecisionCriteria& criteria,
                             Orientation orientation);

/// Full status rule: thresholds for numeric values, optional minimum count
/// for nominal lists, INFORMATIONAL otherwise.
MeasureStatus assess(const MeasureValue& value, const MeasureCriteria* criteria,
                     Orientation orientation);

}  // namespace mquare
