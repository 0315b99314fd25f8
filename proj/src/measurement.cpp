#include "mquare/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mquare {

namespace {

// Threshold comparisons tolerate accumulated rounding from consolidation
// and formula evaluation.
constexpr double kCompareEpsilon = 1e-9;

std::string format_count(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double require_count(const MeasureSpec& spec, const std::map<std::string, double>& elements,
                     const std::string& name, const std::string& context) {
    auto it = elements.find(name);
    if (it == elements.end()) throw MissingElement(spec.id, context + name);
    double v = it->second;
    if (!std::isfinite(v) || v < 0.0)
        throw InvalidElementValue(spec.id, "element " + context + name + " must be finite and >= 0");
    if (std::floor(v) != v)
        throw InvalidElementValue(spec.id, "element " + context + name + " must be an integer count");
    return v;
}

void warn_unknown_elements(const std::map<std::string, double>& elements, const std::string& context,
                           MeasureValue& out) {
    for (const auto& [name, _] : elements)
        if (name != "A" && name != "B") out.warnings.push_back("ignored element " + context + name);
}

// A/B or 1 - A/B from validated counts.
MeasureValue ratio_value(const MeasureSpec& spec, const std::map<std::string, double>& elements,
                         bool one_minus, const std::string& context) {
    double a = require_count(spec, elements, "A", context);
    double b = require_count(spec, elements, "B", context);
    if (b == 0.0) {
        auto v = MeasureValue::not_applicable("B = 0");
        warn_unknown_elements(elements, context, v);
        return v;
    }
    double ratio = a / b;
    auto v = MeasureValue::numeric(one_minus ? 1.0 - ratio : ratio);
    if (a > b) {
        v.inconsistent = true;
        v.warnings.push_back(context + "A (" + format_count(a) + ") exceeds B (" + format_count(b) +
                             "); value kept as computed");
    }
    warn_unknown_elements(elements, context, v);
    return v;
}

MeasureValue mean_of_objectives(const std::vector<std::pair<std::string, MeasureValue>>& objectives) {
    if (objectives.empty()) return MeasureValue::not_applicable("no usage objectives");
    MeasureValue out = MeasureValue::numeric(0.0);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [name, value] : objectives) {
        for (const auto& w : value.warnings) out.warnings.push_back(w);
        if (!value.is_numeric()) {
            out.warnings.push_back("objective " + name + " excluded: not applicable");
            continue;
        }
        out.inconsistent = out.inconsistent || value.inconsistent;
        sum += value.number();
        ++n;
    }
    if (n == 0) {
        auto na = MeasureValue::not_applicable("no applicable usage objectives");
        na.warnings = std::move(out.warnings);
        return na;
    }
    std::get<Numeric>(out.data).value = sum / static_cast<double>(n);
    return out;
}

}  // namespace

std::string_view to_string(MeasureStatus status) {
    switch (status) {
    case MeasureStatus::TargetMet: return "TARGET_MET";
    case MeasureStatus::Acceptable: return "ACCEPTABLE";
    case MeasureStatus::Failed: return "FAILED";
    case MeasureStatus::NotApplicable: return "NOT_APPLICABLE";
    case MeasureStatus::Informational: return "INFORMATIONAL";
    }
    return "?";
}

std::optional<MeasureStatus> parse_measure_status(std::string_view token) {
    for (auto s : {MeasureStatus::TargetMet, MeasureStatus::Acceptable, MeasureStatus::Failed,
                   MeasureStatus::NotApplicable, MeasureStatus::Informational})
        if (to_string(s) == token) return s;
    return std::nullopt;
}

std::optional<int> status_rank(MeasureStatus status) {
    switch (status) {
    case MeasureStatus::Failed: return 0;
    case MeasureStatus::Acceptable: return 1;
    case MeasureStatus::TargetMet: return 2;
    default: return std::nullopt;
    }
}

MeasurementError::MeasurementError(std::string measure_id, const std::string& message)
    : Error(measure_id + ": " + message), measure_id_(std::move(measure_id)) {}

MissingElement::MissingElement(std::string measure_id, std::string element)
    : MeasurementError(measure_id, "missing element " + element),
      element_(std::move(element)) {}

std::vector<std::pair<std::string, MeasureValue>> objective_values(const MeasureSpec& cap1,
                                                                   const ElementValues& elements) {
    std::vector<std::pair<std::string, MeasureValue>> out;
    for (const auto& obj : elements.per_objective) {
        out.emplace_back(obj.name, ratio_value(cap1, obj.elements, /*one_minus=*/true,
                                               "objective " + obj.name + ": "));
    }
    return out;
}

MeasureValue compute_measure(const MeasureSpec& spec, const ElementValues& elements) {
    if (elements.measure_id != spec.id)
        throw WrongKindInput(spec.id, "elements recorded for " + elements.measure_id);

    switch (spec.kind) {
    case MeasureKind::Nominal:
        if (!elements.numeric.empty() || !elements.per_objective.empty())
            throw WrongKindInput(spec.id, "nominal measure takes a list of items");
        return MeasureValue::nominal(elements.nominal_items);

    case MeasureKind::MeanOfDependent: {
        if (!elements.numeric.empty() || !elements.nominal_items.empty())
            throw WrongKindInput(spec.id,
                                 "value is derived from per-objective CAp-1 results; "
                                 "free-standing elements are rejected");
        if (elements.per_objective.empty()) throw MissingElement(spec.id, "per_objective");
        return mean_of_objectives(objective_values(spec, elements));
    }

    case MeasureKind::OneMinusRatio:
    case MeasureKind::Ratio:
    case MeasureKind::Difference:
        break;
    }

    if (!elements.nominal_items.empty())
        throw WrongKindInput(spec.id, "nominal items supplied to a numeric measure");

    if (spec.kind == MeasureKind::Difference) {
        if (!elements.per_objective.empty())
            throw WrongKindInput(spec.id, "per-objective data given to a difference measure");
        double a = require_count(spec, elements.numeric, "A", "");
        double b = require_count(spec, elements.numeric, "B", "");
        auto v = MeasureValue::numeric(a - b);
        warn_unknown_elements(elements.numeric, "", v);
        return v;
    }

    const bool one_minus = spec.kind == MeasureKind::OneMinusRatio;
    if (!elements.per_objective.empty()) {
        // Only the per-usage-objective measure accepts objective blocks. Without
        // its own A/B the value is the mean over objectives.
        if (spec.id != "CAp-1")
            throw WrongKindInput(spec.id, "per-objective data is only accepted for CAp-1");
        if (elements.numeric.empty()) return mean_of_objectives(objective_values(spec, elements));
    }
    return ratio_value(spec, elements.numeric, one_minus, "");
}

MeasureValue compute_cap2(const std::vector<double>& per_objective_values) {
    if (per_objective_values.empty()) return MeasureValue::not_applicable("no usage objectives");
    double sum = 0.0;
    for (double v : per_objective_values) {
        if (!(v >= 0.0 && v <= 1.0))
            throw OutOfRangeInput("CAp-2", "objective score " + format_count(v) + " outside [0,1]");
        sum += v;
    }
    return MeasureValue::numeric(sum / static_cast<double>(per_objective_values.size()));
}

bool criteria_well_formed(const DecisionCriteria& criteria, Orientation orientation) {
    if (!std::isfinite(criteria.target_value) || !std::isfinite(criteria.acceptable_tolerance_value))
        return false;
    switch (orientation) {
    case Orientation::HigherBetter:
        return criteria.acceptable_tolerance_value <= criteria.target_value;
    case Orientation::LowerBetter:
        return criteria.acceptable_tolerance_value >= criteria.target_value;
    case Orientation::Informational: return true;
    }
    return false;
}

MeasureStatus apply_criteria(const MeasureValue& value, const DecisionCriteria& criteria,
                             Orientation orientation) {
    if (!criteria_well_formed(criteria, orientation)) {
        std::ostringstream os;
        os << "tolerance " << criteria.acceptable_tolerance_value << " on the wrong side of target "
           << criteria.target_value << " for " << to_string(orientation);
        throw IllFormedCriteria(os.str());
    }
    if (value.is_not_applicable()) return MeasureStatus::NotApplicable;
    if (value.is_nominal() || orientation == Orientation::Informational)
        return MeasureStatus::Informational;
    if (value.inconsistent) return MeasureStatus::Failed;

    const double v = value.number();
    const double target = criteria.target_value;
    const double tolerance = criteria.acceptable_tolerance_value;
    if (orientation == Orientation::HigherBetter) {
        if (v >= target - kCompareEpsilon) return MeasureStatus::TargetMet;
        if (v >= tolerance - kCompareEpsilon) return MeasureStatus::Acceptable;
        return MeasureStatus::Failed;
    }
    if (v <= target + kCompareEpsilon) return MeasureStatus::TargetMet;
    if (v <= tolerance + kCompareEpsilon) return MeasureStatus::Acceptable;
    return MeasureStatus::Failed;
}

MeasureStatus assess(const MeasureValue& value, const MeasureCriteria* criteria,
                     Orientation orientation) {
    if (value.is_not_applicable()) return MeasureStatus::NotApplicable;
    if (value.is_nominal()) {
        if (criteria && criteria->min_item_count)
            return value.items().size() >= *criteria->min_item_count ? MeasureStatus::TargetMet
                                                                      : MeasureStatus::Failed;
        return MeasureStatus::Informational;
    }
    if (!criteria || !criteria->thresholds) return MeasureStatus::Informational;
    return apply_criteria(value, *criteria->thresholds, orientation);
}

}  // namespace mquare
