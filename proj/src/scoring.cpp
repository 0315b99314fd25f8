#include "mquare/scoring.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "json_util.hpp"
#include "markdown.hpp"
#include "mquare/formula.hpp"

namespace mquare {

namespace {

using detail::json;

constexpr const char* kSchema = "mqer-v1";

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
    for (const auto& i : items)
        if (i.id == id) return &i;
    return nullptr;
}

bool unbounded(const MeasureSpec& m) { return m.range.type == ValueRange::Type::UnboundedInteger; }

/// Evaluates an explicit formula. `lookup` resolves an identifier to the
/// value it stands for, or nullopt when the identifier is not bindable.
AggregateValue explicit_aggregate(
    const std::string& id, const std::string& location, const std::string& text,
    const std::function<std::optional<MeasureValue>(const std::string&)>& lookup) {
    AggregateValue agg{id, MeasureValue::not_applicable(""), text, true};
    std::optional<FormulaExpr> expr;
    try {
        expr = parse_formula(text);
    } catch (const FormulaSyntaxError& e) {
        throw FormulaEvaluationError(location, e.what());
    }
    std::map<std::string, double> bindings;
    std::vector<std::string> inapplicable;
    for (const auto& name : expr->identifiers()) {
        auto v = lookup(name);
        if (!v) continue;  // left unbound; evaluation reports it
        if (v->is_numeric()) {
            bindings[name] = v->number();
        } else {
            inapplicable.push_back(name);
        }
    }
    if (!inapplicable.empty()) {
        agg.value = MeasureValue::not_applicable(detail::join(inapplicable, ", ") + " not applicable");
        agg.value.warnings.push_back(location + ": " + detail::join(inapplicable, ", ") +
                                     " not applicable; formula not evaluated");
        return agg;
    }
    try {
        agg.value = MeasureValue::numeric(evaluate_formula(*expr, bindings));
    } catch (const Error& e) {
        throw FormulaEvaluationError(location, e.what());
    }
    return agg;
}

AggregateValue default_aggregate(const std::string& id, const std::vector<FormulaInput>& inputs) {
    AggregateValue agg{id, default_formula(inputs), "", false};
    std::vector<std::string> used;
    for (const auto& in : inputs)
        if (!in.unbounded && in.value.is_numeric()) used.push_back(in.name);
    if (!used.empty()) agg.formula = "mean(" + detail::join(used, ", ") + ")";
    return agg;
}

json value_json(const MeasureValue& v) {
    json j = json::object();
    if (v.is_numeric()) {
        j["kind"] = "numeric";
        j["value"] = v.number();
    } else if (v.is_nominal()) {
        j["kind"] = "nominal";
        j["items"] = v.items();
    } else {
        j["kind"] = "not_applicable";
        j["reason"] = v.reason();
    }
    j["inconsistent"] = v.inconsistent;
    j["warnings"] = v.warnings;
    return j;
}

MeasureValue parse_value(const json& j, const std::string& context) {
    detail::require_object(j, context);
    auto kind = detail::string_field(j, "kind", context, true);
    MeasureValue v;
    if (kind == "numeric") {
        auto it = j.find("value");
        if (it == j.end() || !it->is_number()) throw FormatError(context + ": numeric value expected");
        v = MeasureValue::numeric(it->get<double>());
    } else if (kind == "nominal") {
        v = MeasureValue::nominal(detail::string_list(j, "items", context));
    } else if (kind == "not_applicable") {
        v = MeasureValue::not_applicable(detail::string_field(j, "reason", context));
    } else {
        throw FormatError(context + ": unknown value kind '" + kind + "'");
    }
    if (auto it = j.find("inconsistent"); it != j.end()) {
        if (!it->is_boolean()) throw FormatError(context + ": 'inconsistent' must be a boolean");
        v.inconsistent = it->get<bool>();
    }
    v.warnings = detail::string_list(j, "warnings", context);
    return v;
}

json evaluators_json(const std::vector<EvaluatorValue>& list) {
    json arr = json::array();
    for (const auto& e : list)
        arr.push_back({{"evaluator", e.evaluator}, {"value", value_json(e.value)}, {"elements", e.elements}});
    return arr;
}

std::vector<EvaluatorValue> parse_evaluators(const json& j, const std::string& context) {
    std::vector<EvaluatorValue> out;
    auto it = j.find("per_evaluator");
    if (it == j.end()) return out;
    if (!it->is_array()) throw FormatError(context + ": 'per_evaluator' must be an array");
    for (const auto& e : *it) {
        detail::require_object(e, context);
        out.push_back({detail::string_field(e, "evaluator", context),
                       parse_value(e.at("value"), context + ".value"),
                       detail::string_field(e, "elements", context)});
    }
    return out;
}

json aggregates_json(const std::vector<AggregateValue>& list) {
    json arr = json::array();
    for (const auto& a : list)
        arr.push_back({{"id", a.id},
                       {"value", value_json(a.value)},
                       {"formula", a.formula},
                       {"explicit_formula", a.explicit_formula}});
    return arr;
}

std::vector<AggregateValue> parse_aggregates(const json& j, const char* key) {
    std::vector<AggregateValue> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    if (!it->is_array()) throw FormatError(std::string("scorecard: '") + key + "' must be an array");
    for (const auto& a : *it) {
        const std::string context = std::string("scorecard: ") + key;
        detail::require_object(a, context);
        AggregateValue agg;
        agg.id = detail::string_field(a, "id", context, true);
        if (!a.contains("value")) throw FormatError(context + ": missing field 'value'");
        agg.value = parse_value(a.at("value"), context + "." + agg.id);
        agg.formula = detail::string_field(a, "formula", context);
        agg.explicit_formula = a.value("explicit_formula", false);
        out.push_back(std::move(agg));
    }
    return out;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::AllTargetsMet: return "ALL_TARGETS_MET";
    case Verdict::Acceptable: return "ACCEPTABLE";
    case Verdict::Failed: return "FAILED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::optional<Verdict> parse_verdict(std::string_view token) {
    for (auto v : {Verdict::AllTargetsMet, Verdict::Acceptable, Verdict::Failed, Verdict::Inconclusive})
        if (to_string(v) == token) return v;
    return std::nullopt;
}

const ScorecardRow* Scorecard::find_row(std::string_view measure_id) const {
    for (const auto& r : rows)
        if (r.measure == measure_id) return &r;
    return nullptr;
}

const AggregateValue* Scorecard::find_sub_characteristic(std::string_view id) const {
    return find_by_id(sub_characteristics, id);
}

const AggregateValue* Scorecard::find_characteristic(std::string_view id) const {
    return find_by_id(characteristics, id);
}

MissingResult::MissingResult(std::string measure_id)
    : Error("no result for selected measure " + measure_id), measure_id_(std::move(measure_id)) {}

FormulaEvaluationError::FormulaEvaluationError(std::string location, const std::string& message)
    : Error(location + ": " + message), location_(std::move(location)) {}

MeasureValue default_formula(const std::vector<FormulaInput>& inputs) {
    double sum = 0.0;
    std::size_t n = 0;
    std::vector<std::string> warnings;
    for (const auto& in : inputs) {
        if (!in.value.is_numeric()) continue;
        if (in.unbounded) {
            warnings.push_back(in.name + " has an unbounded range and is excluded from the default mean");
            continue;
        }
        sum += in.value.number();
        ++n;
    }
    MeasureValue out = n == 0 ? MeasureValue::not_applicable("no applicable numeric inputs")
                              : MeasureValue::numeric(sum / static_cast<double>(n));
    out.warnings = std::move(warnings);
    return out;
}

Verdict verdict_for(const std::vector<MeasureStatus>& statuses) {
    bool failed = false, acceptable = false, met = false;
    for (auto s : statuses) {
        failed |= s == MeasureStatus::Failed;
        acceptable |= s == MeasureStatus::Acceptable;
        met |= s == MeasureStatus::TargetMet;
    }
    if (failed) return Verdict::Failed;
    if (acceptable) return Verdict::Acceptable;
    if (met) return Verdict::AllTargetsMet;
    return Verdict::Inconclusive;
}

Scorecard build_scorecard(const EvaluationPlan& plan, const ResultSet& results, const Catalog& catalog) {
    Scorecard card;
    card.plan_id = plan.id();
    card.metamodel_id = plan.metamodel_id;

    std::vector<MeasureStatus> statuses;
    for (const auto& m : catalog.measures()) {
        if (!plan.selected_measures.count(m.id)) continue;
        auto it = results.find(m.id);
        if (it == results.end()) throw MissingResult(m.id);
        const auto& r = it->second;
        const auto* sub = catalog.find_sub_characteristic(m.sub_characteristic);
        card.rows.push_back({sub->parent, sub->id, m.id, m.requirements, r.elements, r.value, r.value, r.status,
                             r.per_evaluator});
        statuses.push_back(r.status);
        if (r.value.is_not_applicable())
            card.warnings.push_back(m.id + " not applicable: " + r.value.reason());
        for (const auto& w : r.value.warnings) card.warnings.push_back(m.id + ": " + w);
    }
    for (const auto& [id, r] : results)
        if (!plan.selected_measures.count(id)) card.warnings.push_back("result for unselected measure " + id + " ignored");

    auto measure_lookup = [&](const std::string& name) -> std::optional<MeasureValue> {
        const auto* m = catalog.find_measure_by_alias(name);
        if (!m || !m->is_numeric() || !plan.selected_measures.count(m->id)) return std::nullopt;
        return card.find_row(m->id)->measured;
    };

    for (const auto& ch : catalog.characteristics()) {
        for (const auto& sub_id : ch.sub_characteristics) {
            const auto* sub = catalog.find_sub_characteristic(sub_id);
            std::vector<FormulaInput> inputs;
            bool selected = false;
            for (const auto& mid : sub->measures) {
                if (!plan.selected_measures.count(mid)) continue;
                selected = true;
                const auto& m = catalog.measure(mid);
                if (m.is_numeric()) inputs.push_back({m.alias(), card.find_row(mid)->measured, unbounded(m)});
            }
            if (!selected) continue;
            auto f = plan.sub_characteristic_formulas.find(sub->id);
            if (f != plan.sub_characteristic_formulas.end()) {
                card.sub_characteristics.push_back(explicit_aggregate(
                    sub->id, "sub_characteristic_formulas." + sub->id, f->second, measure_lookup));
            } else {
                card.sub_characteristics.push_back(default_aggregate(sub->id, inputs));
            }
        }
    }

    auto char_lookup = [&](const std::string& name) -> std::optional<MeasureValue> {
        if (auto v = measure_lookup(name)) return v;
        if (!catalog.find_sub_characteristic(name)) return std::nullopt;
        if (const auto* agg = card.find_sub_characteristic(name)) return agg->value;
        return MeasureValue::not_applicable("no selected measure");
    };

    for (const auto& ch : catalog.characteristics()) {
        std::vector<FormulaInput> inputs;
        for (const auto& sub_id : ch.sub_characteristics)
            if (const auto* agg = card.find_sub_characteristic(sub_id)) inputs.push_back({agg->id, agg->value, false});
        if (inputs.empty()) continue;
        auto f = plan.characteristic_formulas.find(ch.id);
        if (f != plan.characteristic_formulas.end()) {
            card.characteristics.push_back(
                explicit_aggregate(ch.id, "characteristic_formulas." + ch.id, f->second, char_lookup));
        } else {
            card.characteristics.push_back(default_aggregate(ch.id, inputs));
        }
    }

    for (const auto* list : {&card.sub_characteristics, &card.characteristics})
        for (const auto& agg : *list)
            for (const auto& w : agg.value.warnings) card.warnings.push_back(agg.id + ": " + w);

    card.verdict = verdict_for(statuses);
    return card;
}

std::string serialize_scorecard_json(const Scorecard& card) {
    json j = json::object();
    j["schema"] = kSchema;
    j["plan_id"] = card.plan_id;
    j["metamodel_id"] = card.metamodel_id;
    j["verdict"] = std::string(to_string(card.verdict));
    json rows = json::array();
    for (const auto& r : card.rows)
        rows.push_back({{"characteristic", r.characteristic},
                        {"sub_characteristic", r.sub_characteristic},
                        {"measure", r.measure},
                        {"requirements", r.requirements},
                        {"elements", r.elements},
                        {"measured_value", value_json(r.measured)},
                        {"final_value", value_json(r.final_value)},
                        {"status", std::string(to_string(r.status))},
                        {"per_evaluator", evaluators_json(r.per_evaluator)}});
    j["rows"] = rows;
    j["sub_characteristics"] = aggregates_json(card.sub_characteristics);
    j["characteristics"] = aggregates_json(card.characteristics);
    j["warnings"] = card.warnings;
    return j.dump(2) + "\n";
}

Scorecard parse_scorecard_json(std::string_view text) {
    json j = detail::parse_json(text, "scorecard");
    detail::require_object(j, "scorecard");
    auto schema = detail::string_field(j, "schema", "scorecard", true);
    if (schema != kSchema) throw FormatError("scorecard: unsupported schema '" + schema + "'");
    Scorecard card;
    card.plan_id = detail::string_field(j, "plan_id", "scorecard", true);
    card.metamodel_id = detail::string_field(j, "metamodel_id", "scorecard");
    auto verdict = parse_verdict(detail::string_field(j, "verdict", "scorecard", true));
    if (!verdict) throw FormatError("scorecard: unknown verdict");
    card.verdict = *verdict;
    if (auto it = j.find("rows"); it != j.end()) {
        if (!it->is_array()) throw FormatError("scorecard: 'rows' must be an array");
        for (const auto& r : *it) {
            detail::require_object(r, "scorecard: row");
            ScorecardRow row;
            row.measure = detail::string_field(r, "measure", "scorecard: row", true);
            const std::string context = "scorecard: row " + row.measure;
            row.characteristic = detail::string_field(r, "characteristic", context);
            row.sub_characteristic = detail::string_field(r, "sub_characteristic", context);
            row.requirements = detail::string_list(r, "requirements", context);
            row.elements = detail::string_field(r, "elements", context);
            if (!r.contains("measured_value") || !r.contains("final_value"))
                throw FormatError(context + ": measured_value and final_value are required");
            row.measured = parse_value(r.at("measured_value"), context);
            row.final_value = parse_value(r.at("final_value"), context);
            auto status = parse_measure_status(detail::string_field(r, "status", context, true));
            if (!status) throw FormatError(context + ": unknown status");
            row.status = *status;
            row.per_evaluator = parse_evaluators(r, context);
            card.rows.push_back(std::move(row));
        }
    }
    card.sub_characteristics = parse_aggregates(j, "sub_characteristics");
    card.characteristics = parse_aggregates(j, "characteristics");
    card.warnings = detail::string_list(j, "warnings", "scorecard");
    return card;
}

}  // namespace mquare
