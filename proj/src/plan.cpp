#include "mquare/plan.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "json_util.hpp"
#include "markdown.hpp"
#include "mquare/formula.hpp"
#include "mquare/format.hpp"

namespace mquare {

namespace {

using detail::json;

constexpr std::array<PurposeInfo, 11> kPurposes{{
    {PurposeCode::IntermediateAssureQuality, "INTERMEDIATE_ASSURE_QUALITY",
     MetamodelVersion::Intermediate, "Assure quality for the metamodel"},
    {PurposeCode::IntermediateAccept, "INTERMEDIATE_ACCEPT", MetamodelVersion::Intermediate,
     "Decide on the acceptance of an intermediate metamodel version"},
    {PurposeCode::IntermediateFeasibility, "INTERMEDIATE_FEASIBILITY",
     MetamodelVersion::Intermediate, "Access the ongoing feasibility of the ongoing metamodel"},
    {PurposeCode::IntermediatePredict, "INTERMEDIATE_PREDICT", MetamodelVersion::Intermediate,
     "Predict or estimate final metamodel quality"},
    {PurposeCode::IntermediateImprove, "INTERMEDIATE_IMPROVE", MetamodelVersion::Intermediate,
     "Discover improvement points in the metamodel"},
    {PurposeCode::IntermediateControl, "INTERMEDIATE_CONTROL", MetamodelVersion::Intermediate,
     "Collect information on intermediate metamodel version in order to control and manage "
     "the process"},
    {PurposeCode::FinalAccept, "FINAL_ACCEPT", MetamodelVersion::Final,
     "Decide on the acceptance of the metamodel"},
    {PurposeCode::FinalCompare, "FINAL_COMPARE", MetamodelVersion::Final,
     "Compare a metamodel with others"},
    {PurposeCode::FinalSelect, "FINAL_SELECT", MetamodelVersion::Final,
     "Select a metamodel from among alternative metamodels"},
    {PurposeCode::FinalAssessEffects, "FINAL_ASSESS_EFFECTS", MetamodelVersion::Final,
     "Assess both positive and negative effects of a metamodel"},
    {PurposeCode::FinalImprove, "FINAL_IMPROVE", MetamodelVersion::Final,
     "Discover improvement points in the metamodel"},
}};

constexpr const char* kSchema = "mqep-v1";

ValidationFinding error(std::string code, std::string message, std::string subject) {
    return {Severity::Error, std::move(code), std::move(message), std::move(subject)};
}

ValidationFinding warning(std::string code, std::string message, std::string subject) {
    return {Severity::Warning, std::move(code), std::move(message), std::move(subject)};
}

/// Selected measures in catalog order; unknown ids are dropped.
std::vector<const MeasureSpec*> selected_specs(const EvaluationPlan& plan, const Catalog& catalog) {
    std::vector<const MeasureSpec*> out;
    for (const auto& m : catalog.measures())
        if (plan.selected_measures.count(m.id)) out.push_back(&m);
    return out;
}

/// True when the plan selects at least one numeric measure of `sub_id`.
bool has_numeric_selection(const EvaluationPlan& plan, const Catalog& catalog,
                           const std::string& sub_id) {
    const auto* sub = catalog.find_sub_characteristic(sub_id);
    if (!sub) return false;
    return std::any_of(sub->measures.begin(), sub->measures.end(), [&](const std::string& id) {
        return plan.selected_measures.count(id) && catalog.measure(id).is_numeric();
    });
}

void check_formula(const EvaluationPlan& plan, const Catalog& catalog, const std::string& target,
                   const std::string& text, bool characteristic_level,
                   std::vector<ValidationFinding>& out) {
    const std::string where = (characteristic_level ? "characteristic_formulas." :
                                                      "sub_characteristic_formulas.") + target;
    if (characteristic_level ? !catalog.find_characteristic(target)
                             : !catalog.find_sub_characteristic(target)) {
        out.push_back(error("formula-target",
                            where + ": no " +
                                (characteristic_level ? "characteristic" : "sub-characteristic") +
                                " with id " + target,
                            where));
        return;
    }
    std::optional<FormulaExpr> expr;
    try {
        expr = parse_formula(text);
    } catch (const FormulaSyntaxError& e) {
        out.push_back(error("formula-syntax", where + ": " + e.what(), where));
        return;
    }
    for (const auto& name : expr->identifiers()) {
        if (const auto* m = catalog.find_measure_by_alias(name)) {
            if (!m->is_numeric()) {
                out.push_back(error("formula-identifier",
                                    where + ": " + name + " is a nominal measure with no numeric value",
                                    where));
            } else if (!plan.selected_measures.count(m->id)) {
                out.push_back(error("formula-identifier",
                                    where + ": " + name + " refers to unselected measure " + m->id,
                                    where));
            }
            continue;
        }
        if (characteristic_level && catalog.find_sub_characteristic(name)) {
            if (!has_numeric_selection(plan, catalog, name))
                out.push_back(error("formula-identifier",
                                    where + ": " + name + " has no selected numeric measure", where));
            continue;
        }
        out.push_back(error("formula-identifier", where + ": unknown identifier " + name, where));
    }
}

std::string json_type_error(const std::string& field, const char* expected) {
    return "plan: field '" + field + "' must be " + expected;
}

double number_field(const json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(context + ": missing field '" + key + "'");
    if (!it->is_number()) throw FormatError(context + ": field '" + key + "' must be a number");
    return it->get<double>();
}

std::map<std::string, std::string> string_map(const json& obj, const char* key) {
    std::map<std::string, std::string> out;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return out;
    if (!it->is_object()) throw FormatError(json_type_error(key, "an object"));
    for (const auto& [k, v] : it->items()) {
        if (!v.is_string()) throw FormatError(json_type_error(std::string(key) + "." + k, "a string"));
        out[k] = v.get<std::string>();
    }
    return out;
}

template <typename T, typename Parse>
std::set<T> token_set(const json& obj, const char* key, Parse parse, const char* code,
                      std::vector<ValidationFinding>& findings) {
    std::set<T> out;
    for (const auto& token : detail::string_list(obj, key, "plan")) {
        auto v = parse(token);
        if (!v) {
            findings.push_back(error(code, std::string(key) + ": unknown token " + token, token));
            continue;
        }
        if (!out.insert(*v).second)
            findings.push_back(warning("duplicate-entry", std::string(key) + ": " + token +
                                                              " listed more than once", token));
    }
    return out;
}

std::set<std::string> id_set(const json& obj, const char* key,
                             std::vector<ValidationFinding>& findings) {
    return token_set<std::string>(
        obj, key, [](const std::string& s) { return std::optional<std::string>(s); }, "", findings);
}

MeasureCriteria parse_criteria(const json& j, const std::string& id) {
    const std::string context = "plan: criteria." + id;
    detail::require_object(j, context);
    MeasureCriteria c;
    bool has_target = j.contains("target_value");
    bool has_tol = j.contains("acceptable_tolerance_value");
    if (has_target || has_tol) {
        c.thresholds = DecisionCriteria{number_field(j, "target_value", context),
                                        number_field(j, "acceptable_tolerance_value", context)};
    }
    if (auto it = j.find("min_item_count"); it != j.end() && !it->is_null()) {
        if (!it->is_number_unsigned())
            throw FormatError(context + ": field 'min_item_count' must be a non-negative integer");
        c.min_item_count = it->get<std::size_t>();
    }
    return c;
}

json criteria_json(const MeasureCriteria& c) {
    json j = json::object();
    if (c.thresholds) {
        j["target_value"] = c.thresholds->target_value;
        j["acceptable_tolerance_value"] = c.thresholds->acceptable_tolerance_value;
    }
    if (c.min_item_count) j["min_item_count"] = *c.min_item_count;
    return j;
}

const std::set<std::string> kKnownFields = {
    "schema",          "plan_id",
    "metamodel_id",    "requester",
    "date",            "version",
    "purposes",        "selectable_purposes",
    "artifacts_available", "resources",
    "selected_requirements", "selected_measures",
    "criteria",        "sub_characteristic_formulas",
    "characteristic_formulas", "usage_objectives",
    "schedule",        "baseline_results_ref",
    "required_independent_concepts",
};

std::string artifact_list(const std::set<ArtifactKind>& kinds) {
    std::vector<std::string> parts;
    for (auto k : kinds) parts.emplace_back(artifact_label(k));
    return detail::join(parts, "; ");
}

std::string default_formula_text(const std::vector<std::string>& aliases) {
    if (aliases.empty()) return "n/a";
    return "mean(" + detail::join(aliases, ", ") + ") (default)";
}

}  // namespace

std::string_view to_string(MetamodelVersion version) {
    return version == MetamodelVersion::Intermediate ? "intermediate" : "final";
}

std::optional<MetamodelVersion> parse_metamodel_version(std::string_view token) {
    if (token == "intermediate") return MetamodelVersion::Intermediate;
    if (token == "final") return MetamodelVersion::Final;
    return std::nullopt;
}

std::span<const PurposeInfo> all_purposes() { return kPurposes; }

const PurposeInfo& purpose_info(PurposeCode code) {
    for (const auto& p : kPurposes)
        if (p.code == code) return p;
    throw Error("unknown purpose code");
}

std::optional<PurposeCode> parse_purpose(std::string_view token) {
    for (const auto& p : kPurposes)
        if (p.token == token) return p.code;
    return std::nullopt;
}

std::vector<PurposeCode> purposes_for(MetamodelVersion version) {
    std::vector<PurposeCode> out;
    for (const auto& p : kPurposes)
        if (p.version == version) out.push_back(p.code);
    return out;
}

bool is_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (text[i] < '0' || text[i] > '9') return false;
    int y = std::stoi(std::string(text.substr(0, 4)));
    unsigned m = static_cast<unsigned>(std::stoi(std::string(text.substr(5, 2))));
    unsigned d = static_cast<unsigned>(std::stoi(std::string(text.substr(8, 2))));
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                       std::chrono::day{d}}
        .ok();
}

std::string today_iso_date() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[16];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
    return buf;
}

EvaluationPlan init_plan(std::string metamodel_id, MetamodelVersion version,
                         std::optional<std::string> date) {
    EvaluationPlan plan;
    plan.metamodel_id = std::move(metamodel_id);
    plan.version = version;
    plan.date = date ? *date : today_iso_date();
    return plan;
}

PlanInvalid::PlanInvalid(std::vector<ValidationFinding> findings)
    : Error([&] {
          std::string msg = "plan is invalid";
          for (const auto& f : findings)
              if (f.severity == Severity::Error) msg += "\n  " + format_finding(f);
          return msg;
      }()),
      findings_(std::move(findings)) {}

std::vector<ValidationFinding> validate_plan(const EvaluationPlan& plan, const Catalog& catalog) {
    std::vector<ValidationFinding> out;

    if (plan.metamodel_id.empty())
        out.push_back(warning("empty-metamodel-id", "empty metamodel_id", "metamodel_id"));
    if (!is_iso_date(plan.date))
        out.push_back(error("date-format", "date '" + plan.date + "' is not YYYY-MM-DD", "date"));

    if (plan.purposes.empty())
        out.push_back(error("purposes-empty", "at least one evaluation purpose is required", "purposes"));
    for (auto code : plan.purposes) {
        const auto& info = purpose_info(code);
        if (info.version != plan.version)
            out.push_back(error("purpose-version",
                                std::string(info.token) + " does not apply to a " +
                                    std::string(to_string(plan.version)) + " metamodel version",
                                std::string(info.token)));
    }

    for (const auto& req_id : plan.selected_requirements) {
        const auto* req = catalog.find_requirement(req_id);
        if (!req) {
            out.push_back(error("unknown-requirement", "unknown requirement " + req_id, req_id));
            continue;
        }
        std::vector<std::string> missing;
        for (auto kind : kAllArtifactKinds)
            if (req->required_artifacts.count(kind) && !plan.artifacts_available.count(kind))
                missing.emplace_back(to_string(kind));
        if (!missing.empty())
            out.push_back(error("artifact-missing",
                                req_id + " requires " + detail::join(missing, ", "), req_id));

        std::size_t covered = std::count_if(req->measures.begin(), req->measures.end(),
                                            [&](const auto& m) { return plan.selected_measures.count(m); });
        if (covered == 0) {
            out.push_back(error("coverage", req_id + " uncovered", req_id));
        } else if (covered < req->measures.size()) {
            std::vector<std::string> left;
            for (const auto& m : req->measures)
                if (!plan.selected_measures.count(m)) left.push_back(m);
            out.push_back(warning("partial-coverage",
                                  req_id + " partially covered; not selected: " + detail::join(left, ", "),
                                  req_id));
        }
    }

    for (const auto& id : plan.selected_measures) {
        if (!catalog.find_measure(id))
            out.push_back(error("unknown-measure", "unknown measure " + id, id));
    }

    const auto specs = selected_specs(plan, catalog);
    for (const auto* m : specs) {
        bool reachable = std::any_of(m->requirements.begin(), m->requirements.end(),
                                     [&](const auto& r) { return plan.selected_requirements.count(r); });
        if (!reachable)
            out.push_back(warning("orphan-measure",
                                  m->id + " is selected but its requirement " +
                                      detail::join(m->requirements, ", ") + " is not",
                                  m->id));

        auto it = plan.criteria.find(m->id);
        const MeasureCriteria* c = it == plan.criteria.end() ? nullptr : &it->second;
        if (m->is_numeric()) {
            if (!c || !c->thresholds) {
                out.push_back(error("criteria-missing", m->id + " has no target/tolerance criteria", m->id));
            } else {
                if (c->min_item_count)
                    out.push_back(error("criteria-ill-formed",
                                        m->id + ": min_item_count applies to nominal measures only", m->id));
                if (!criteria_well_formed(*c->thresholds, m->orientation))
                    out.push_back(error(
                        "criteria-ill-formed",
                        m->id + ": tolerance " + format_number(c->thresholds->acceptable_tolerance_value) +
                            " is on the wrong side of target " +
                            format_number(c->thresholds->target_value) + " for " +
                            std::string(to_string(m->orientation)),
                        m->id));
            }
        } else if (c && c->thresholds) {
            out.push_back(error("criteria-ill-formed",
                                m->id + ": nominal measures accept only min_item_count", m->id));
        }
    }
    for (const auto& [id, c] : plan.criteria) {
        if (!catalog.find_measure(id)) {
            out.push_back(error("unknown-measure", "criteria given for unknown measure " + id, id));
        } else if (!plan.selected_measures.count(id)) {
            out.push_back(warning("criteria-unselected", "criteria given for unselected measure " + id, id));
        }
    }

    for (const auto& [target, text] : plan.sub_characteristic_formulas)
        check_formula(plan, catalog, target, text, false, out);
    for (const auto& [target, text] : plan.characteristic_formulas)
        check_formula(plan, catalog, target, text, true, out);

    for (std::size_t i = 0; i < plan.schedule.size(); ++i) {
        const auto& s = plan.schedule[i];
        const std::string subject = "schedule[" + std::to_string(i) + "]";
        if (!is_iso_date(s.start_date) || !is_iso_date(s.end_date)) {
            out.push_back(error("schedule", subject + ": dates must be YYYY-MM-DD", subject));
        } else if (s.end_date < s.start_date) {
            out.push_back(error("schedule", subject + ": end date precedes start date", subject));
        }
    }

    bool wants_objectives = plan.selected_measures.count("CAp-1") || plan.selected_measures.count("CAp-2");
    if (wants_objectives && plan.usage_objectives.empty())
        out.push_back(warning("usage-objectives", "CAp measures selected but no usage objectives listed",
                              "usage_objectives"));
    if (plan.selected_measures.count("PRe-2") && !plan.baseline_results_ref)
        out.push_back(warning("baseline-missing", "PRe-2 selected without baseline_results_ref",
                              "baseline_results_ref"));
    if (plan.selected_measures.count("MMo-1") && plan.required_independent_concepts.empty())
        out.push_back(warning("independent-concepts",
                              "MMo-1 selected but required_independent_concepts is empty",
                              "required_independent_concepts"));
    return out;
}

PlanLoad parse_plan_json(std::string_view text) {
    PlanLoad load;
    auto& findings = load.findings;
    std::vector<std::string> dups;
    json j = detail::parse_json(text, "plan", &dups);
    detail::require_object(j, "plan");
    for (const auto& d : dups)
        findings.push_back(warning("duplicate-key", "key " + d + " occurs more than once; last one wins", d));

    auto schema = detail::string_field(j, "schema", "plan", true);
    if (schema != kSchema) throw FormatError("plan: unsupported schema '" + schema + "'");
    for (const auto& [key, value] : j.items())
        if (!kKnownFields.count(key))
            findings.push_back(warning("unknown-field", "unknown field '" + key + "' ignored", key));

    auto& p = load.plan;
    p.plan_id = detail::string_field(j, "plan_id", "plan");
    p.metamodel_id = detail::string_field(j, "metamodel_id", "plan");
    p.requester = detail::string_field(j, "requester", "plan");
    p.date = detail::string_field(j, "date", "plan");
    auto version = detail::string_field(j, "version", "plan", true);
    auto v = parse_metamodel_version(version);
    if (!v) throw FormatError("plan: version must be 'intermediate' or 'final', got '" + version + "'");
    p.version = *v;

    p.purposes = token_set<PurposeCode>(j, "purposes", parse_purpose, "unknown-purpose", findings);
    p.artifacts_available =
        token_set<ArtifactKind>(j, "artifacts_available", parse_artifact_kind, "unknown-artifact", findings);
    p.resources = detail::string_field(j, "resources", "plan");
    p.selected_requirements = id_set(j, "selected_requirements", findings);
    p.selected_measures = id_set(j, "selected_measures", findings);

    if (auto it = j.find("criteria"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) throw FormatError(json_type_error("criteria", "an object"));
        for (const auto& [id, c] : it->items()) p.criteria[id] = parse_criteria(c, id);
    }
    p.sub_characteristic_formulas = string_map(j, "sub_characteristic_formulas");
    p.characteristic_formulas = string_map(j, "characteristic_formulas");
    p.usage_objectives = detail::string_list(j, "usage_objectives", "plan");

    if (auto it = j.find("schedule"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw FormatError(json_type_error("schedule", "an array"));
        for (const auto& e : *it) {
            detail::require_object(e, "plan: schedule entry");
            p.schedule.push_back({detail::string_field(e, "activity", "plan: schedule entry", true),
                                  detail::string_field(e, "evaluator", "plan: schedule entry"),
                                  detail::string_field(e, "start_date", "plan: schedule entry"),
                                  detail::string_field(e, "end_date", "plan: schedule entry")});
        }
    }
    if (auto it = j.find("baseline_results_ref"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw FormatError(json_type_error("baseline_results_ref", "a string"));
        p.baseline_results_ref = it->get<std::string>();
    }
    p.required_independent_concepts = detail::string_list(j, "required_independent_concepts", "plan");
    return load;
}

std::string serialize_plan_json(const EvaluationPlan& plan) {
    json j = json::object();
    j["schema"] = kSchema;
    j["plan_id"] = plan.plan_id;
    j["metamodel_id"] = plan.metamodel_id;
    j["requester"] = plan.requester;
    j["date"] = plan.date;
    j["version"] = std::string(to_string(plan.version));
    json purposes = json::array();
    for (auto c : plan.purposes) purposes.push_back(std::string(purpose_info(c).token));
    j["purposes"] = purposes;
    json selectable = json::array();
    for (auto c : plan.selectable_purposes()) selectable.push_back(std::string(purpose_info(c).token));
    j["selectable_purposes"] = selectable;
    json artifacts = json::array();
    for (auto a : plan.artifacts_available) artifacts.push_back(std::string(to_string(a)));
    j["artifacts_available"] = artifacts;
    j["resources"] = plan.resources;
    j["selected_requirements"] = plan.selected_requirements;
    j["selected_measures"] = plan.selected_measures;
    json criteria = json::object();
    for (const auto& [id, c] : plan.criteria) criteria[id] = criteria_json(c);
    j["criteria"] = criteria;
    j["sub_characteristic_formulas"] = plan.sub_characteristic_formulas;
    j["characteristic_formulas"] = plan.characteristic_formulas;
    j["usage_objectives"] = plan.usage_objectives;
    json schedule = json::array();
    for (const auto& s : plan.schedule)
        schedule.push_back({{"activity", s.activity},
                            {"evaluator", s.evaluator},
                            {"start_date", s.start_date},
                            {"end_date", s.end_date}});
    j["schedule"] = schedule;
    j["baseline_results_ref"] = plan.baseline_results_ref ? json(*plan.baseline_results_ref) : json(nullptr);
    j["required_independent_concepts"] = plan.required_independent_concepts;
    return j.dump(2) + "\n";
}

std::string render_plan_document(const EvaluationPlan& plan, const Catalog& catalog) {
    auto findings = validate_plan(plan, catalog);
    if (has_errors(findings)) throw PlanInvalid(std::move(findings));

    const auto specs = selected_specs(plan, catalog);
    auto char_name = [&](const MeasureSpec& m) {
        const auto* sub = catalog.find_sub_characteristic(m.sub_characteristic);
        return catalog.find_characteristic(sub->parent)->name;
    };
    auto sub_name = [&](const MeasureSpec& m) {
        return catalog.find_sub_characteristic(m.sub_characteristic)->name;
    };
    auto reqs = [](const MeasureSpec& m) { return detail::join(m.requirements, ", "); };

    std::string out;
    out += "# Metamodel Quality Evaluation Plan\n\n";
    out += "Metamodel identification: " + plan.metamodel_id + "\n\n";
    if (!plan.plan_id.empty()) out += "Plan id: " + plan.plan_id + "\n\n";
    out += "Evaluation requester: " + plan.requester + "\n\n";
    out += "Plan elaboration date: " + plan.date + "\n\n";
    out += "Metamodel version: " + std::string(to_string(plan.version)) + "\n\n";

    out += "## 1. Evaluation Requirements\n\n### 1.1. Purpose\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (auto code : plan.selectable_purposes())
            rows.push_back({std::string(purpose_info(code).text), plan.purposes.count(code) ? "x" : ""});
        out += detail::markdown_table({"Purpose", "Selected"}, rows) + "\n";
    }
    out += "### 1.2. Metamodel artifacts\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (auto kind : kAllArtifactKinds)
            rows.push_back({std::string(artifact_label(kind)), plan.artifacts_available.count(kind) ? "x" : ""});
        out += detail::markdown_table({"Metamodel artifacts available", "Selected"}, rows) + "\n";
    }
    out += "### 1.3. Resources\n\n" + (plan.resources.empty() ? std::string("(none recorded)") : plan.resources) +
           "\n\n";

    out += "## 2. Metamodel Quality Requirements\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : catalog.requirements())
            if (plan.selected_requirements.count(r.id))
                rows.push_back({r.id + " - " + r.text, artifact_list(r.required_artifacts)});
        out += detail::markdown_table({"Quality Requirements", "Metamodel artifacts required"}, rows) + "\n";
    }

    out += "## 3. Metamodel Quality Measures\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto* m : specs)
            rows.push_back({char_name(*m), sub_name(*m), reqs(*m), m->id + " - " + m->name, m->description,
                            measurement_function_text(*m)});
        out += detail::markdown_table(
                   {"Characteristic", "Sub-characteristic", "MQR", "Measures", "Measure Description",
                    "Measurement function"},
                   rows) +
               "\n";
        if (!plan.usage_objectives.empty()) {
            out += "Usage objectives:\n\n";
            for (const auto& o : plan.usage_objectives) out += "- " + o + "\n";
            out += "\n";
        }
        if (!plan.required_independent_concepts.empty())
            out += "Concepts required to be independent: " +
                   detail::join(plan.required_independent_concepts, ", ") + "\n\n";
        if (plan.baseline_results_ref) out += "Baseline results: " + *plan.baseline_results_ref + "\n\n";
    }

    out += "## 4. Criteria for Metamodel Quality Measures\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto* m : specs) {
            std::string target, tol;
            auto it = plan.criteria.find(m->id);
            if (it != plan.criteria.end() && it->second.thresholds) {
                bool integral = m->range.type == ValueRange::Type::UnboundedInteger;
                target = format_number(it->second.thresholds->target_value, integral);
                tol = format_number(it->second.thresholds->acceptable_tolerance_value, integral);
            } else if (it != plan.criteria.end() && it->second.min_item_count) {
                target = "at least " + std::to_string(*it->second.min_item_count) + " item(s)";
            }
            rows.push_back({m->id + " - " + m->name, m->interpretation, target, tol});
        }
        out += detail::markdown_table(
                   {"Measures", "Interpretation of the measurement value", "Target value",
                    "Acceptable tolerance value"},
                   rows) +
               "\n";
    }

    out += "## 5. Criteria for Evaluating the Metamodel\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& ch : catalog.characteristics()) {
            std::vector<std::string> char_inputs;
            bool any = false;
            for (const auto& sub_id : ch.sub_characteristics) {
                const auto* sub = catalog.find_sub_characteristic(sub_id);
                std::vector<std::string> aliases;
                bool selected = false;
                for (const auto& mid : sub->measures) {
                    if (!plan.selected_measures.count(mid)) continue;
                    selected = true;
                    const auto& m = catalog.measure(mid);
                    if (m.is_numeric() && m.range.type != ValueRange::Type::UnboundedInteger)
                        aliases.push_back(m.alias());
                }
                if (!selected) continue;
                any = true;
                if (!aliases.empty() || plan.sub_characteristic_formulas.count(sub->id))
                    char_inputs.push_back(sub->id);
                auto f = plan.sub_characteristic_formulas.find(sub->id);
                rows.push_back({"Sub-characteristic", sub->id + " " + sub->name,
                                f != plan.sub_characteristic_formulas.end() ? f->second
                                                                            : default_formula_text(aliases)});
            }
            if (!any) continue;
            auto f = plan.characteristic_formulas.find(ch.id);
            rows.push_back({"Characteristic", ch.id + " " + ch.name,
                            f != plan.characteristic_formulas.end() ? f->second
                                                                    : default_formula_text(char_inputs)});
        }
        out += detail::markdown_table({"Level", "Target", "Formula"}, rows) + "\n";
    }

    out += "## 6. Metamodel Evaluation Activities\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : plan.schedule) rows.push_back({s.activity, s.evaluator, s.start_date, s.end_date});
        out += detail::markdown_table({"Evaluation process activity", "Evaluators", "Start date", "End date"},
                                      rows) +
               "\n";
    }

    out += "## 7. Measurements Table\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto* m : specs)
            rows.push_back({char_name(*m), sub_name(*m), reqs(*m), m->id + " " + m->name, "", "", "", ""});
        out += detail::markdown_table({"Characteristic", "Sub-characteristic", "Quality Requirement", "Measure",
                                       "Measured value", "Final measurement value", "Sub-characteristic value",
                                       "Characteristic value"},
                                      rows);
    }
    return out;
}

}  // namespace mquare
