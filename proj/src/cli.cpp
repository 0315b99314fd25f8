#include "mquare/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "mquare/catalog.hpp"
#include "mquare/format.hpp"
#include "mquare/metamodel.hpp"
#include "mquare/plan.hpp"
#include "mquare/report.hpp"
#include "mquare/scoring.hpp"
#include "mquare/session.hpp"

namespace mquare {

namespace {

class IoError : public Error {
public:
    using Error::Error;
};

/// Raised by a command to end with a specific status after printing.
struct Finish {
    int code;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    out.close();
    if (!out) throw IoError("cannot write " + path);
}

void print_findings(const std::vector<ValidationFinding>& findings, std::ostream& os) {
    for (const auto& f : findings) os << format_finding(f) << "\n";
}

EvaluationPlan load_plan(const std::string& path, std::vector<ValidationFinding>& findings) {
    auto load = parse_plan_json(read_file(path));
    findings.insert(findings.end(), load.findings.begin(), load.findings.end());
    return std::move(load.plan);
}

/// Loads and validates; prints findings and stops with status 1 on ERROR.
EvaluationPlan checked_plan(const std::string& path, const Catalog& catalog, std::ostream& err) {
    std::vector<ValidationFinding> findings;
    auto plan = load_plan(path, findings);
    auto more = validate_plan(plan, catalog);
    findings.insert(findings.end(), more.begin(), more.end());
    print_findings(findings, err);
    if (has_errors(findings)) throw Finish{kExitFindings};
    return plan;
}

void show_measure(const MeasureSpec& m, const Catalog& catalog, std::ostream& out) {
    const auto* sub = catalog.find_sub_characteristic(m.sub_characteristic);
    const auto* ch = catalog.find_characteristic(sub->parent);
    out << m.id << " - " << m.name << "\n"
        << "characteristic: " << ch->name << " (" << ch->id << ")\n"
        << "sub-characteristic: " << sub->name << " (" << sub->id << ")\n"
        << "requirements: " << [&] {
               std::string s;
               for (const auto& r : m.requirements) s += (s.empty() ? "" : ", ") + r;
               return s;
           }() << "\n"
        << "question: " << m.description << "\n"
        << "function: " << measurement_function_text(m) << "\n";
    for (const auto& e : m.elements) out << "  " << e.symbol << " = " << e.meaning << "\n";
    out << "kind: " << to_string(m.kind) << "\n"
        << "orientation: " << to_string(m.orientation) << "\n"
        << "range: " << m.range.describe() << "\n"
        << "interpretation: " << m.interpretation << "\n"
        << "alias: " << m.alias() << "\n"
        << "origin: " << m.provenance_note << "\n";
}

void show_requirement(const QualityRequirement& r, std::ostream& out) {
    out << r.id << " - " << r.text << "\n";
    if (!r.gloss.empty()) out << "reading: " << r.gloss << "\n";
    out << "sub-characteristic: " << r.sub_characteristic << "\n";
    out << "measures:";
    for (const auto& m : r.measures) out << " " << m;
    out << "\nartifacts:";
    for (auto a : r.required_artifacts) out << " " << to_string(a);
    out << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const Catalog& catalog = load_builtin_catalog();

    CLI::App app{"Metamodel quality evaluation: catalog, plans, analysis, scoring and reports", "mquare"};
    app.require_subcommand(1);

    auto* catalog_cmd = app.add_subcommand("catalog", "Inspect the built-in quality catalog");
    catalog_cmd->require_subcommand(1);
    auto* cat_list = catalog_cmd->add_subcommand("list", "List measures in catalog order");
    std::string characteristic;
    cat_list->add_option("--characteristic", characteristic, "Characteristic id (C, CS, U, M, P)");
    auto* cat_show = catalog_cmd->add_subcommand("show", "Show one measure or requirement");
    std::string show_id;
    cat_show->add_option("id", show_id, "Measure id (e.g. CCp-1) or requirement id (e.g. MQR02)")->required();
    auto* cat_export = catalog_cmd->add_subcommand("export", "Export the catalog as catalog-v1 JSON");
    std::string export_out;
    cat_export->add_option("--out", export_out, "Output file (default: stdout)");

    auto* plan_cmd = app.add_subcommand("plan", "Author, validate and render evaluation plans");
    plan_cmd->require_subcommand(1);
    auto* plan_init = plan_cmd->add_subcommand("init", "Write a skeleton plan");
    std::string init_metamodel, init_version, init_date, init_id, init_out;
    plan_init->add_option("--metamodel", init_metamodel, "Metamodel identification")->required();
    plan_init->add_option("--version", init_version, "intermediate | final")
        ->required()
        ->check(CLI::IsMember({"intermediate", "final"}));
    plan_init->add_option("--date", init_date, "Plan date, YYYY-MM-DD (default: today)");
    plan_init->add_option("--plan-id", init_id, "Plan id (default: the metamodel id)");
    plan_init->add_option("--out", init_out, "Output plan file")->required();
    auto* plan_validate = plan_cmd->add_subcommand("validate", "Check a plan against the catalog rules");
    std::string validate_file;
    plan_validate->add_option("file", validate_file, "Plan file")->required();
    auto* plan_render = plan_cmd->add_subcommand("render", "Render the plan document");
    std::string render_file, render_out;
    plan_render->add_option("file", render_file, "Plan file")->required();
    plan_render->add_option("--out", render_out, "Output document")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Derive structural measure elements from a .mmdl file");
    std::string mmdl_file, analyze_plan, analyze_out;
    analyze_cmd->add_option("file", mmdl_file, "Metamodel file")->required();
    analyze_cmd->add_option("--plan", analyze_plan, "Plan selecting the measures to prefill");
    analyze_cmd->add_option("--out", analyze_out, "Output session fragment")->required();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Compute the scorecard from measurement sessions");
    std::string eval_plan, eval_out;
    std::vector<std::string> eval_sessions;
    evaluate_cmd->add_option("--plan", eval_plan, "Plan file")->required();
    evaluate_cmd->add_option("--session", eval_sessions, "Session file (repeatable)")->required();
    evaluate_cmd->add_option("--out", eval_out, "Output scorecard")->required();

    auto* report_cmd = app.add_subcommand("report", "Render the evaluation report");
    std::string report_plan, report_card, report_meta, report_out;
    report_cmd->add_option("--plan", report_plan, "Plan file")->required();
    report_cmd->add_option("--scorecard", report_card, "Scorecard file")->required();
    report_cmd->add_option("--meta", report_meta, "Evaluator and review information")->required();
    report_cmd->add_option("--out", report_out, "Output report")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kExitUsage;
    }

    try {
        if (*cat_list) {
            if (!characteristic.empty() && !catalog.find_characteristic(characteristic)) {
                err << "unknown characteristic " << characteristic << "\n";
                return kExitUsage;
            }
            for (const auto& m : catalog.measures()) {
                const auto* sub = catalog.find_sub_characteristic(m.sub_characteristic);
                if (!characteristic.empty() && sub->parent != characteristic) continue;
                out << m.id << "\t" << sub->parent << "/" << sub->id << "\t" << to_string(m.kind) << "\t"
                    << to_string(m.orientation) << "\t" << m.name << "\n";
            }
        } else if (*cat_show) {
            if (const auto* m = catalog.find_measure(show_id)) {
                show_measure(*m, catalog, out);
            } else if (const auto* r = catalog.find_requirement(show_id)) {
                show_requirement(*r, out);
            } else {
                err << "unknown measure or requirement " << show_id << "\n";
                return kExitUsage;
            }
        } else if (*cat_export) {
            auto text = export_catalog_json(catalog);
            if (export_out.empty()) {
                out << text;
            } else {
                write_file(export_out, text);
            }
        } else if (*plan_init) {
            if (!init_date.empty() && !is_iso_date(init_date)) {
                err << "--date must be YYYY-MM-DD\n";
                return kExitUsage;
            }
            auto plan = init_plan(init_metamodel, *parse_metamodel_version(init_version),
                                  init_date.empty() ? std::nullopt : std::optional<std::string>(init_date));
            plan.plan_id = init_id;
            write_file(init_out, serialize_plan_json(plan));
            out << "wrote " << init_out << "; selectable purposes:";
            for (auto code : plan.selectable_purposes()) out << " " << purpose_info(code).token;
            out << "\n";
        } else if (*plan_validate) {
            std::vector<ValidationFinding> findings;
            auto plan = load_plan(validate_file, findings);
            auto more = validate_plan(plan, catalog);
            findings.insert(findings.end(), more.begin(), more.end());
            print_findings(findings, out);
            if (has_errors(findings)) return kExitFindings;
            if (findings.empty()) out << "plan " << plan.id() << " is valid\n";
        } else if (*plan_render) {
            auto plan = checked_plan(render_file, catalog, err);
            write_file(render_out, render_plan_document(plan, catalog));
        } else if (*analyze_cmd) {
            auto graph = parse_mmdl(read_file(mmdl_file));
            std::optional<EvaluationPlan> plan;
            if (!analyze_plan.empty()) plan = checked_plan(analyze_plan, catalog, err);
            auto coupling = coupling_report(graph);
            if (graph.root) {
                out << format_trace(instantiation_complexity(graph), coupling);
            } else {
                out << "MMo-2: not computed, no root declared\n";
            }
            auto s = suggest_elements(graph, plan ? &*plan : nullptr);
            for (const auto& n : s.notes) out << "note: " << n << "\n";
            write_file(analyze_out, serialize_session_json(s.fragment));
        } else if (*evaluate_cmd) {
            auto plan = checked_plan(eval_plan, catalog, err);
            std::vector<MeasurementSession> sessions;
            for (const auto& path : eval_sessions) {
                auto load = parse_session_json(read_file(path));
                for (const auto& f : load.findings) err << path << ": " << format_finding(f) << "\n";
                if (has_errors(load.findings)) return kExitFindings;
                sessions.push_back(std::move(load.session));
            }
            auto card = evaluate(plan, consolidate(plan, sessions, catalog), catalog);
            write_file(eval_out, serialize_scorecard_json(card));
            for (const auto& row : card.rows) {
                const auto& m = catalog.measure(row.measure);
                out << row.measure << "\t" << format_value(row.final_value, m) << "\t" << to_string(row.status)
                    << "\n";
            }
            out << "verdict: " << to_string(card.verdict) << "\n";
        } else if (*report_cmd) {
            auto plan = checked_plan(report_plan, catalog, err);
            auto card = parse_scorecard_json(read_file(report_card));
            auto meta = parse_report_meta_json(read_file(report_meta));
            write_file(report_out, render_report(plan, card, meta, catalog));
        }
    } catch (const Finish& f) {
        return f.code;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownConcept& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CyclicGeneralization& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "ERROR " << e.what() << "\n";
        return kExitFindings;
    }
    return kExitOk;
}

}  // namespace mquare
