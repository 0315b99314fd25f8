#include "mquare/report.hpp"

#include <charconv>
#include <set>

#include "json_util.hpp"
#include "markdown.hpp"
#include "mquare/format.hpp"

namespace mquare {

namespace {

using detail::json;

std::string status_label(MeasureStatus s) {
    switch (s) {
    case MeasureStatus::TargetMet: return "target met";
    case MeasureStatus::Acceptable: return "within tolerance";
    case MeasureStatus::Failed: return "below tolerance";
    case MeasureStatus::NotApplicable: return "not applicable";
    case MeasureStatus::Informational: return "informational";
    }
    return "?";
}

std::string raw_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Measured-value cell: the recorded elements followed by the raw value.
std::string measured_cell(const ScorecardRow& row) {
    std::string x;
    if (row.measured.is_numeric()) {
        x = "X = " + raw_number(row.measured.number());
    } else if (row.measured.is_nominal()) {
        x = std::to_string(row.measured.items().size()) + " item(s)";
    } else {
        x = "X = n/a (" + row.measured.reason() + ")";
    }
    if (row.elements.empty() || row.elements == "(none)" || row.measured.is_nominal()) return x;
    return row.elements + "; " + x;
}

std::string aggregate_cell(const AggregateValue* agg) {
    if (!agg) return "";
    if (!agg->value.is_numeric()) return "n/a";
    return format_number(agg->value.number());
}

std::string plain(const std::string& text) { return text.empty() ? std::string("None reported.") : text; }

}  // namespace

ReportMeta parse_report_meta_json(std::string_view text) {
    json j = detail::parse_json(text, "report meta");
    detail::require_object(j, "report meta");
    ReportMeta meta;
    if (auto it = j.find("evaluators"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw FormatError("report meta: 'evaluators' must be an array");
        for (const auto& e : *it) {
            detail::require_object(e, "report meta: evaluator");
            meta.evaluators.push_back({detail::string_field(e, "name", "report meta: evaluator", true),
                                       detail::string_field(e, "qualifications", "report meta: evaluator")});
        }
    }
    meta.evaluation_period = detail::string_field(j, "evaluation_period", "report meta");
    meta.problems = detail::string_field(j, "problems", "report meta");
    meta.analyses = detail::string_field(j, "analyses", "report meta");
    meta.review_notes = detail::string_field(j, "review_notes", "report meta");
    return meta;
}

std::string render_report(const EvaluationPlan& plan, const Scorecard& card, const ReportMeta& meta,
                          const Catalog& catalog) {
    if (card.plan_id != plan.id())
        throw PlanScorecardMismatch("scorecard belongs to plan '" + card.plan_id + "', not '" + plan.id() + "'");
    std::set<std::string> row_ids;
    for (const auto& r : card.rows) {
        if (!plan.selected_measures.count(r.measure))
            throw PlanScorecardMismatch("scorecard row " + r.measure + " is not selected in the plan");
        if (!row_ids.insert(r.measure).second)
            throw PlanScorecardMismatch("scorecard lists " + r.measure + " more than once");
    }
    for (const auto& id : plan.selected_measures)
        if (!row_ids.count(id)) throw PlanScorecardMismatch("scorecard has no row for selected measure " + id);

    std::vector<std::string> names;
    for (const auto& e : meta.evaluators) names.push_back(e.name);

    std::string out;
    out += "# Metamodel Quality Evaluation Report\n\n";
    out += "Metamodel identification: " + plan.metamodel_id + "\n\n";
    out += "Evaluators: " + (names.empty() ? std::string("(not recorded)") : detail::join(names, ", ")) + "\n\n";
    out += "Evaluation period: " + (meta.evaluation_period.empty() ? std::string("(not recorded)") : meta.evaluation_period) +
           "\n\n";

    out += "## 1. Quality evaluation plan\n\n";
    out += "Plan " + plan.id() + " dated " + plan.date + " for the " + std::string(to_string(plan.version)) +
           " metamodel version";
    if (!plan.requester.empty()) out += ", requested by " + plan.requester;
    out += ".\n\nPurposes:\n\n";
    for (auto code : plan.purposes) out += "- " + std::string(purpose_info(code).text) + "\n";
    out += "\nArtifacts available:\n\n";
    for (auto kind : plan.artifacts_available) out += "- " + std::string(artifact_label(kind)) + "\n";
    out += "\nQuality requirements evaluated:\n\n";
    for (const auto& r : catalog.requirements())
        if (plan.selected_requirements.count(r.id)) out += "- " + r.id + " - " + r.text + "\n";
    out += "\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : card.rows) {
            const auto& m = catalog.measure(row.measure);
            auto it = plan.criteria.find(m.id);
            std::string target, tol;
            if (it != plan.criteria.end() && it->second.thresholds) {
                bool integral = m.range.type == ValueRange::Type::UnboundedInteger;
                target = format_number(it->second.thresholds->target_value, integral);
                tol = format_number(it->second.thresholds->acceptable_tolerance_value, integral);
            } else if (it != plan.criteria.end() && it->second.min_item_count) {
                target = "at least " + std::to_string(*it->second.min_item_count) + " item(s)";
            }
            rows.push_back({m.id + " " + m.name, target, tol});
        }
        out += detail::markdown_table({"Measure", "Target value", "Acceptable tolerance value"}, rows) + "\n";
    }

    out += "## 2. The evaluators and their qualifications\n\n";
    if (meta.evaluators.empty()) out += "None recorded.\n";
    for (const auto& e : meta.evaluators)
        out += "- " + e.name + ": " + (e.qualifications.empty() ? std::string("(not stated)") : e.qualifications) + "\n";
    out += "\n";

    out += "## 3. Problems or workarounds in adverse events\n\n" + plain(meta.problems) + "\n\n";
    if (!card.warnings.empty()) {
        out += "Warnings recorded during evaluation:\n\n";
        for (const auto& w : card.warnings) out += "- " + w + "\n";
        out += "\n";
    }

    out += "## 4. The results from the measurements and analyses performed\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        std::string last_char, last_sub;
        for (const auto& row : card.rows) {
            const auto& m = catalog.measure(row.measure);
            const auto* sub = catalog.find_sub_characteristic(row.sub_characteristic);
            const auto* ch = catalog.find_characteristic(row.characteristic);
            std::vector<std::string> reqs;
            for (const auto& rid : row.requirements) reqs.push_back(rid + " - " + catalog.requirement(rid).text);
            bool new_char = row.characteristic != last_char;
            bool new_sub = new_char || row.sub_characteristic != last_sub;
            rows.push_back({new_char ? ch->name : "", new_sub ? sub->name : "", detail::join(reqs, " "),
                            m.id + " " + m.name, measured_cell(row), format_value(row.final_value, m),
                            new_sub ? aggregate_cell(card.find_sub_characteristic(row.sub_characteristic)) : "",
                            new_char ? aggregate_cell(card.find_characteristic(row.characteristic)) : ""});
            last_char = row.characteristic;
            last_sub = row.sub_characteristic;
        }
        out += detail::markdown_table({"Characteristic", "Sub-characteristic", "Quality Requirement", "Measure",
                                       "Measured value", "Final measurement value", "Sub-characteristic value",
                                       "Characteristic value"},
                                      rows) +
               "\n";
    }
    out += "Measure status:\n\n";
    for (const auto& row : card.rows) {
        out += "- " + row.measure + ": " + status_label(row.status) + "\n";
        if (row.per_evaluator.size() > 1) {
            const auto& m = catalog.measure(row.measure);
            for (const auto& e : row.per_evaluator)
                out += "  - " + e.evaluator + ": " + format_value(e.value, m) + " (" + e.elements + ")\n";
        }
    }
    out += "\nGrades:\n\n";
    for (const auto* list : {&card.sub_characteristics, &card.characteristics}) {
        for (const auto& agg : *list) {
            std::string name = list == &card.sub_characteristics ? catalog.find_sub_characteristic(agg.id)->name
                                                                 : catalog.find_characteristic(agg.id)->name;
            out += "- " + agg.id + " " + name + ": " + aggregate_cell(&agg);
            if (!agg.formula.empty()) out += " from " + agg.formula + (agg.explicit_formula ? "" : " (default)");
            out += "\n";
        }
    }
    out += "\nAnalyses:\n\n" + plain(meta.analyses) + "\n\n";

    out += "## 5. Result of the evaluation\n\n";
    out += "Overall verdict: " + std::string(to_string(card.verdict)) + "\n";
    if (!meta.review_notes.empty()) out += "\nReview notes:\n\n" + meta.review_notes + "\n";
    return out;
}

}  // namespace mquare
