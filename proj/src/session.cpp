#include "mquare/session.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <tuple>

#include "json_util.hpp"
#include "markdown.hpp"

namespace mquare {

namespace {

using detail::json;

constexpr const char* kSchema = "mqes-v1";
constexpr const char* kArrow = " \xE2\x86\x92 ";  // " → "

const std::set<std::string> kKnownFields = {"schema", "plan_id", "evaluator", "recorded_at",
                                            "notes",  "entries", "candidates"};

std::string number_text(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string pairs_text(const std::map<std::string, double>& elements) {
    std::vector<std::string> parts;
    for (const auto& [k, v] : elements) parts.push_back(k + " = " + number_text(v));
    return detail::join(parts, ", ");
}

std::map<std::string, double> parse_numeric_block(const json& j, const std::string& context) {
    std::map<std::string, double> out;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) throw FormatError(context + ": element '" + k + "' must be a number");
        out[k] = v.get<double>();
    }
    return out;
}

ElementValues parse_entry(const std::string& id, const json& j) {
    const std::string context = "session: entries." + id;
    ElementValues e;
    e.measure_id = id;
    if (j.is_array()) {
        for (const auto& item : j) {
            if (item.is_string()) {
                e.nominal_items.push_back(item.get<std::string>());
            } else if (item.is_object()) {
                auto c = detail::string_field(item, "concept", context, true);
                auto f = detail::string_field(item, "foundation", context, true);
                e.nominal_items.push_back(traceability_item(c, f));
            } else {
                throw FormatError(context + ": list items must be strings or {concept, foundation}");
            }
        }
        return e;
    }
    if (!j.is_object()) throw FormatError(context + ": expected an element object or an item list");
    json rest = j;
    if (auto it = j.find("objectives"); it != j.end()) {
        if (!it->is_object()) throw FormatError(context + ": 'objectives' must be an object");
        for (const auto& [name, block] : it->items()) {
            detail::require_object(block, context + ".objectives." + name);
            e.per_objective.push_back({name, parse_numeric_block(block, context + ".objectives." + name)});
        }
        rest.erase("objectives");
    }
    e.numeric = parse_numeric_block(rest, context);
    return e;
}

json entry_json(const ElementValues& e) {
    bool is_list = e.numeric.empty() && e.per_objective.empty() && !e.nominal_items.empty();
    if (is_list) return json(e.nominal_items);
    json j = json::object();
    for (const auto& [k, v] : e.numeric) j[k] = v;
    if (!e.per_objective.empty()) {
        json objs = json::object();
        for (const auto& o : e.per_objective) objs[o.name] = o.elements;
        j["objectives"] = objs;
    }
    return j;
}

struct EvaluatorResult {
    std::string evaluator;
    MeasureResult result;
};

MeasureResult merge(const MeasureSpec& spec, const MeasureCriteria* criteria,
                    std::vector<EvaluatorResult> parts) {
    if (parts.size() == 1) return std::move(parts.front().result);
    std::sort(parts.begin(), parts.end(), [](const EvaluatorResult& a, const EvaluatorResult& b) {
        return std::tie(a.evaluator, a.result.elements) < std::tie(b.evaluator, b.result.elements);
    });
    MeasureResult out;
    for (const auto& p : parts) out.per_evaluator.push_back({p.evaluator, p.result.value, p.result.elements});

    std::vector<std::string> warnings;
    for (const auto& p : parts)
        for (const auto& w : p.result.value.warnings) warnings.push_back(p.evaluator + ": " + w);

    if (!spec.is_numeric()) {
        std::set<std::string> items;
        for (const auto& p : parts)
            if (p.result.value.is_nominal()) items.insert(p.result.value.items().begin(), p.result.value.items().end());
        out.value = MeasureValue::nominal({items.begin(), items.end()});
    } else {
        std::vector<double> values;
        bool inconsistent = false;
        for (const auto& p : parts) {
            if (!p.result.value.is_numeric()) continue;
            values.push_back(p.result.value.number());
            inconsistent = inconsistent || p.result.value.inconsistent;
        }
        if (values.empty()) {
            out.value = MeasureValue::not_applicable("not applicable in every session");
        } else {
            // Sorted summation makes the mean independent of session order;
            // the clamp absorbs rounding at the extremes.
            std::sort(values.begin(), values.end());
            double sum = 0.0;
            for (double v : values) sum += v;
            double mean = std::clamp(sum / static_cast<double>(values.size()), values.front(), values.back());
            out.value = MeasureValue::numeric(mean);
            out.value.inconsistent = inconsistent;
        }
    }
    out.value.warnings = std::move(warnings);
    out.status = assess(out.value, criteria, spec.orientation);
    out.elements = "consolidated from " + std::to_string(parts.size()) + " evaluators";
    return out;
}

}  // namespace

const ElementValues* MeasurementSession::find_entry(std::string_view measure_id) const {
    for (const auto& e : entries)
        if (e.measure_id == measure_id) return &e;
    return nullptr;
}

std::string traceability_item(const std::string& concept_name, const std::string& foundation) {
    return concept_name + kArrow + foundation;
}

UnselectedMeasure::UnselectedMeasure(std::string measure_id)
    : Error("measure " + measure_id + " is not selected in the plan"), measure_id_(std::move(measure_id)) {}

SessionLoad parse_session_json(std::string_view text) {
    SessionLoad load;
    std::vector<std::string> dups;
    json j = detail::parse_json(text, "session", &dups);
    detail::require_object(j, "session");
    for (const auto& d : dups) {
        bool entry = d.rfind("entries/", 0) == 0 && d.find('/', 8) == std::string::npos;
        load.findings.push_back(
            {Severity::Warning, entry ? "re-recorded" : "duplicate-key",
             entry ? d.substr(8) + " recorded more than once; the last entry replaces earlier ones"
                   : "key " + d + " occurs more than once; last one wins",
             entry ? d.substr(8) : d});
    }

    auto schema = detail::string_field(j, "schema", "session", true);
    if (schema != kSchema) throw FormatError("session: unsupported schema '" + schema + "'");
    for (const auto& [key, value] : j.items())
        if (!kKnownFields.count(key))
            load.findings.push_back({Severity::Warning, "unknown-field", "unknown field '" + key + "' ignored", key});

    auto& s = load.session;
    s.plan_id = detail::string_field(j, "plan_id", "session", true);
    s.evaluator = detail::string_field(j, "evaluator", "session", true);
    s.recorded_at = detail::string_field(j, "recorded_at", "session");
    s.notes = detail::string_field(j, "notes", "session");
    if (!s.recorded_at.empty() && !is_iso_date(std::string_view(s.recorded_at).substr(0, 10)))
        load.findings.push_back({Severity::Warning, "timestamp-format",
                                 "recorded_at '" + s.recorded_at + "' is not an ISO-8601 timestamp",
                                 "recorded_at"});

    if (auto it = j.find("entries"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) throw FormatError("session: 'entries' must be an object keyed by measure id");
        for (const auto& [id, value] : it->items()) s.entries.push_back(parse_entry(id, value));
    }
    if (auto it = j.find("candidates"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) throw FormatError("session: 'candidates' must be an object");
        for (const auto& [id, block] : it->items()) {
            detail::require_object(block, "session: candidates." + id);
            auto note = detail::string_field(block, "note", "session: candidates." + id);
            for (const auto& [element, v] : block.items()) {
                if (element == "note") continue;
                if (!v.is_number()) throw FormatError("session: candidates." + id + "." + element + " must be a number");
                s.candidates.push_back({id, element, v.get<double>(), note});
            }
        }
    }
    return load;
}

std::string serialize_session_json(const MeasurementSession& s) {
    json j = json::object();
    j["schema"] = kSchema;
    j["plan_id"] = s.plan_id;
    j["evaluator"] = s.evaluator;
    j["recorded_at"] = s.recorded_at;
    j["notes"] = s.notes;
    json entries = json::object();
    for (const auto& e : s.entries) entries[e.measure_id] = entry_json(e);
    j["entries"] = entries;
    if (!s.candidates.empty()) {
        json c = json::object();
        for (const auto& cand : s.candidates) {
            c[cand.measure_id][cand.element] = cand.value;
            if (!cand.note.empty()) c[cand.measure_id]["note"] = cand.note;
        }
        j["candidates"] = c;
    }
    return j.dump(2) + "\n";
}

std::string describe_elements(const ElementValues& e) {
    std::vector<std::string> parts;
    if (!e.numeric.empty()) parts.push_back(pairs_text(e.numeric));
    for (const auto& o : e.per_objective) parts.push_back(o.name + ": " + pairs_text(o.elements));
    if (!e.nominal_items.empty()) parts.push_back(std::to_string(e.nominal_items.size()) + " item(s)");
    return parts.empty() ? std::string("(none)") : detail::join(parts, "; ");
}

ResultSet compute_session(const EvaluationPlan& plan, const MeasurementSession& session, const Catalog& catalog) {
    ResultSet out;
    auto record = [&](const MeasureSpec& spec, const ElementValues& elements) {
        MeasureResult r;
        r.value = compute_measure(spec, elements);
        if (!elements.per_objective.empty() && !plan.usage_objectives.empty()) {
            for (const auto& o : elements.per_objective)
                if (std::find(plan.usage_objectives.begin(), plan.usage_objectives.end(), o.name) ==
                    plan.usage_objectives.end())
                    r.value.warnings.push_back("objective " + o.name + " is not listed in the plan");
        }
        auto it = plan.criteria.find(spec.id);
        r.status = assess(r.value, it == plan.criteria.end() ? nullptr : &it->second, spec.orientation);
        r.elements = describe_elements(elements);
        r.per_evaluator.push_back({session.evaluator, r.value, r.elements});
        out[spec.id] = std::move(r);
    };

    for (const auto& e : session.entries) {
        const auto& spec = catalog.measure(e.measure_id);
        if (!plan.selected_measures.count(spec.id)) throw UnselectedMeasure(spec.id);
        record(spec, e);
    }

    const auto* cap1 = session.find_entry("CAp-1");
    if (plan.selected_measures.count("CAp-2") && !out.count("CAp-2") && cap1 && !cap1->per_objective.empty()) {
        ElementValues derived;
        derived.measure_id = "CAp-2";
        derived.per_objective = cap1->per_objective;
        record(catalog.measure("CAp-2"), derived);
    }
    return out;
}

ResultSet consolidate(const EvaluationPlan& plan, const std::vector<MeasurementSession>& sessions,
                      const Catalog& catalog) {
    if (sessions.empty()) throw EmptySessionSet();
    for (const auto& s : sessions)
        if (s.plan_id != plan.id())
            throw MixedPlan("session by '" + s.evaluator + "' targets plan '" + s.plan_id + "', not '" +
                            plan.id() + "'");

    if (sessions.size() == 1) return compute_session(plan, sessions.front(), catalog);

    std::map<std::string, std::vector<EvaluatorResult>> by_measure;
    for (const auto& s : sessions)
        for (auto& [id, r] : compute_session(plan, s, catalog)) by_measure[id].push_back({s.evaluator, std::move(r)});

    ResultSet out;
    for (auto& [id, parts] : by_measure) {
        const auto& spec = catalog.measure(id);
        auto it = plan.criteria.find(id);
        out[id] = merge(spec, it == plan.criteria.end() ? nullptr : &it->second, std::move(parts));
    }
    return out;
}

Scorecard evaluate(const EvaluationPlan& plan, const ResultSet& consolidated, const Catalog& catalog) {
    return build_scorecard(plan, consolidated, catalog);
}

}  // namespace mquare
