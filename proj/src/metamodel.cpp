#include "mquare/metamodel.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "markdown.hpp"

namespace mquare {

namespace {

enum class Tok { Ident, String, Number, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 0;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), line});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            out.push_back({Tok::Number, std::string(src.substr(start, i - start)), line});
        } else if (c == '"') {
            std::string text;
            std::size_t start_line = line;
            ++i;
            while (true) {
                if (i >= src.size() || src[i] == '\n') throw ParseError(start_line, "unterminated string");
                if (src[i] == '"') break;
                if (src[i] == '\\' && i + 1 < src.size() && (src[i + 1] == '"' || src[i + 1] == '\\')) ++i;
                text += src[i++];
            }
            ++i;
            out.push_back({Tok::String, std::move(text), start_line});
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            out.push_back({Tok::Symbol, "->", line});
            i += 2;
        } else if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
            out.push_back({Tok::Symbol, "..", line});
            i += 2;
        } else if (std::string_view("{}:.,[]*").find(c) != std::string_view::npos) {
            out.push_back({Tok::Symbol, std::string(1, c), line});
            ++i;
        } else {
            throw ParseError(line, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line});
    return out;
}

struct PendingRef {
    Reference ref;
    std::size_t line;
};

class MmdlParser {
public:
    explicit MmdlParser(std::string_view text) : toks_(lex(text)) {}

    MetamodelGraph parse() {
        if (!is_ident("metamodel")) fail("expected 'metamodel \"<name>\"' as the first statement");
        next();
        graph_.name = expect(Tok::String, "metamodel name in quotes").text;
        while (peek().kind != Tok::End) statement();
        resolve();
        return std::move(graph_);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    MetamodelGraph graph_;
    std::map<std::string, std::size_t> concept_lines_;
    std::vector<std::pair<Generalization, std::size_t>> extends_;
    std::vector<PendingRef> refs_;
    std::optional<std::pair<std::string, std::size_t>> root_;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool is_ident(std::string_view word) const { return peek().kind == Tok::Ident && peek().text == word; }
    bool is_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(peek().line, message); }

    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what);
        return next();
    }
    void expect_symbol(std::string_view s) {
        if (!is_symbol(s)) fail("expected '" + std::string(s) + "'");
        next();
    }
    std::string name(const std::string& what) { return expect(Tok::Ident, what).text; }

    void statement() {
        if (is_ident("abstract") || is_ident("concept")) return concept_decl();
        if (is_ident("ref")) return ref_decl();
        if (is_ident("root")) {
            std::size_t line = next().line;
            if (root_) throw ParseError(line, "root declared more than once");
            root_ = {name("root concept name"), line};
            return;
        }
        if (is_ident("metamodel")) fail("metamodel declared more than once");
        fail("expected 'concept', 'abstract concept', 'ref' or 'root'");
    }

    void concept_decl() {
        Concept c;
        if (is_ident("abstract")) {
            c.is_abstract = true;
            next();
            if (!is_ident("concept")) fail("expected 'concept' after 'abstract'");
        }
        std::size_t line = next().line;
        c.name = name("concept name");
        if (concept_lines_.count(c.name)) throw ParseError(line, "concept " + c.name + " declared twice");
        concept_lines_[c.name] = line;
        if (is_ident("extends")) {
            next();
            do {
                if (is_symbol(",")) next();
                extends_.push_back({{c.name, name("parent concept name")}, line});
            } while (is_symbol(","));
        }
        if (is_symbol("{")) {
            next();
            std::set<std::string> seen;
            while (!is_symbol("}")) {
                if (peek().kind == Tok::End) fail("expected '}' to close concept " + c.name);
                if (!is_ident("attr")) fail("expected 'attr' or '}'");
                std::size_t attr_line = next().line;
                Attribute a;
                a.name = name("attribute name");
                expect_symbol(":");
                a.type = name("attribute type");
                if (!seen.insert(a.name).second)
                    throw ParseError(attr_line, "attribute " + a.name + " declared twice in " + c.name);
                c.attributes.push_back(std::move(a));
            }
            next();
        }
        graph_.concepts.push_back(std::move(c));
    }

    unsigned bound(const std::string& what) {
        const auto& t = expect(Tok::Number, what);
        try {
            return static_cast<unsigned>(std::stoul(t.text));
        } catch (const std::exception&) {
            throw ParseError(t.line, what + " out of range");
        }
    }

    void ref_decl() {
        std::size_t line = next().line;
        Reference r;
        r.source = name("source concept");
        expect_symbol(".");
        r.field = name("reference name");
        expect_symbol("->");
        r.target = name("target concept");
        if (is_symbol("[")) {
            next();
            r.lower = bound("lower bound");
            expect_symbol("..");
            if (is_symbol("*")) {
                next();
                r.upper = std::nullopt;
            } else {
                r.upper = bound("upper bound or '*'");
                if (*r.upper == 0) throw ParseError(line, "upper bound must be positive");
                if (*r.upper < r.lower) throw ParseError(line, "upper bound below lower bound");
            }
            expect_symbol("]");
        }
        if (is_ident("containment")) {
            next();
            r.containment = true;
        }
        refs_.push_back({std::move(r), line});
    }

    void require_concept(const std::string& n, std::size_t line) const {
        if (!concept_lines_.count(n)) throw UnknownConcept(n, line);
    }

    void resolve() {
        for (const auto& [g, line] : extends_) {
            require_concept(g.parent, line);
            if (g.parent == g.child) throw CyclicGeneralization({g.child, g.child});
            graph_.generalizations.push_back(g);
        }
        std::set<std::pair<std::string, std::string>> fields;
        for (auto& [r, line] : refs_) {
            require_concept(r.source, line);
            require_concept(r.target, line);
            if (!fields.insert({r.source, r.field}).second)
                throw ParseError(line, "reference " + r.source + "." + r.field + " declared twice");
            graph_.references.push_back(std::move(r));
        }
        if (root_) {
            require_concept(root_->first, root_->second);
            graph_.root = root_->first;
        }
        check_acyclic();
    }

    void check_acyclic() const {
        std::map<std::string, int> state;  // 1 = on stack, 2 = done
        std::vector<std::string> stack;
        std::function<void(const std::string&)> visit = [&](const std::string& n) {
            state[n] = 1;
            stack.push_back(n);
            for (const auto& p : graph_.parents(n)) {
                if (state[p] == 1) {
                    std::vector<std::string> cycle(std::find(stack.begin(), stack.end(), p), stack.end());
                    cycle.push_back(p);
                    throw CyclicGeneralization(cycle);
                }
                if (state[p] == 0) visit(p);
            }
            stack.pop_back();
            state[n] = 2;
        };
        for (const auto& c : graph_.concepts)
            if (state[c.name] == 0) visit(c.name);
    }
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

class Expander {
public:
    Expander(const MetamodelGraph& g, InstantiationComplexity& out) : g_(g), out_(out) {}

    void run(const std::string& root) {
        out_.elements.push_back({root, concrete(root), std::nullopt, ""});
        out_.trace.push_back("element " + root + " (root)");
        expand(0, root, {root});
    }

private:
    const MetamodelGraph& g_;
    InstantiationComplexity& out_;
    std::set<std::string> noted_;

    void note(const std::string& line) {
        if (noted_.insert(line).second) out_.trace.push_back(line);
    }

    std::vector<std::string> concrete(const std::string& type) const {
        std::vector<std::string> out;
        auto add = [&](const std::string& n) {
            if (!g_.find_concept(n)->is_abstract) out.push_back(n);
        };
        add(type);
        for (const auto& d : g_.descendants(type)) add(d);
        return out;
    }

    std::vector<const Reference*> refs_of(const std::string& concept_name) const {
        std::vector<const Reference*> out;
        for (const auto& r : g_.references)
            if (r.source == concept_name) out.push_back(&r);
        return out;
    }

    void expand(std::size_t index, const std::string& type, const std::vector<std::string>& path) {
        std::vector<const Reference*> mandatory;
        for (const auto& c : g_.self_and_ancestors(type)) {
            for (const auto* r : refs_of(c)) {
                const std::string label = r->source + "." + r->field + " -> " + r->target + " " + r->multiplicity();
                if (!r->containment) {
                    if (r->mandatory()) note("ignored for ordering: mandatory non-containment reference " + label);
                    continue;
                }
                if (!r->mandatory()) {
                    note("skipped optional containment " + label);
                    continue;
                }
                mandatory.push_back(r);
            }
        }
        for (const auto& d : g_.descendants(type))
            for (const auto* r : refs_of(d))
                if (r->containment && r->mandatory())
                    note("not expanded: " + r->source + "." + r->field + " -> " + r->target +
                         " is declared on specialization " + d + " of " + type);

        std::vector<std::string> children;
        for (const auto* r : mandatory) {
            auto alts = concrete(r->target);
            const std::string via = r->source + "." + r->field;
            if (alts.empty()) {
                note("skipped " + via + " -> " + r->target + ": no concrete concept can fill it");
                continue;
            }
            if (std::find(path.begin(), path.end(), r->target) != path.end()) {
                auto cycle = path;
                cycle.push_back(r->target);
                throw MandatoryContainmentCycle(cycle);
            }
            if (out_.elements.size() >= kMaxInstantiationElements)
                throw Error("mandatory instantiation tree exceeds " + std::to_string(kMaxInstantiationElements) +
                            " elements");
            std::size_t child = out_.elements.size();
            out_.elements.push_back({r->target, alts, index, via});
            std::string line = "element " + r->target + " via " + via + " " + r->multiplicity() + ", after " +
                               out_.elements[index].concept_name;
            if (alts.size() > 1 || alts.front() != r->target)
                line += "; alternatives {" + detail::join(alts, ", ") + "} count as one element";
            out_.trace.push_back(line);
            children.push_back(r->target);
            auto next_path = path;
            next_path.push_back(r->target);
            expand(child, r->target, next_path);
        }
        if (children.size() >= 2) {
            ++out_.b;
            out_.trace.push_back("group under " + out_.elements[index].concept_name + ": {" +
                                 detail::join(children, ", ") + "} in any order");
        }
    }
};

}  // namespace

std::string Reference::multiplicity() const {
    return "[" + std::to_string(lower) + ".." + (upper ? std::to_string(*upper) : std::string("*")) + "]";
}

const Concept* MetamodelGraph::find_concept(std::string_view n) const {
    for (const auto& c : concepts)
        if (c.name == n) return &c;
    return nullptr;
}

std::vector<std::string> MetamodelGraph::parents(std::string_view n) const {
    std::vector<std::string> out;
    for (const auto& g : generalizations)
        if (g.child == n) out.push_back(g.parent);
    return out;
}

std::vector<std::string> MetamodelGraph::descendants(std::string_view n) const {
    std::set<std::string> found;
    std::vector<std::string> frontier{std::string(n)};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const auto& g : generalizations)
            if (std::find(frontier.begin(), frontier.end(), g.parent) != frontier.end() && g.child != n &&
                found.insert(g.child).second)
                next.push_back(g.child);
        frontier = std::move(next);
    }
    std::vector<std::string> out;
    for (const auto& c : concepts)
        if (found.count(c.name)) out.push_back(c.name);
    return out;
}

std::vector<std::string> MetamodelGraph::self_and_ancestors(std::string_view n) const {
    std::vector<std::string> out{std::string(n)};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& p : parents(out[i]))
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    return out;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

UnknownConcept::UnknownConcept(std::string name, std::size_t line)
    : Error((line ? "line " + std::to_string(line) + ": " : std::string()) + "unknown concept " + name),
      name_(std::move(name)),
      line_(line) {}

CyclicGeneralization::CyclicGeneralization(std::vector<std::string> cycle)
    : Error("cyclic generalization: " + detail::join(cycle, " -> ")), cycle_(std::move(cycle)) {}

MandatoryContainmentCycle::MandatoryContainmentCycle(std::vector<std::string> path)
    : Error("mandatory containment cycle: " + detail::join(path, " -> ")), path_(std::move(path)) {}

MetamodelGraph parse_mmdl(std::string_view text) { return MmdlParser(text).parse(); }

std::string serialize_mmdl(const MetamodelGraph& graph) {
    std::string out = "metamodel " + quote(graph.name) + "\n";
    if (!graph.concepts.empty()) out += "\n";
    for (const auto& c : graph.concepts) {
        out += c.is_abstract ? "abstract concept " : "concept ";
        out += c.name;
        auto ps = graph.parents(c.name);
        if (!ps.empty()) out += " extends " + detail::join(ps, ", ");
        if (!c.attributes.empty()) {
            out += " {\n";
            for (const auto& a : c.attributes) out += "  attr " + a.name + ": " + a.type + "\n";
            out += "}";
        }
        out += "\n";
    }
    if (!graph.references.empty()) out += "\n";
    for (const auto& r : graph.references) {
        out += "ref " + r.source + "." + r.field + " -> " + r.target + " " + r.multiplicity();
        if (r.containment) out += " containment";
        out += "\n";
    }
    if (graph.root) out += "\nroot " + *graph.root + "\n";
    return out;
}

const ConceptCoupling* CouplingReport::find(std::string_view name) const {
    for (const auto& c : concepts)
        if (c.concept_name == name) return &c;
    return nullptr;
}

CouplingReport coupling_report(const MetamodelGraph& graph) {
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& r : graph.references)
        if (r.source != r.target) edges.insert({r.source, r.target});
    for (const auto& g : graph.generalizations)
        if (g.child != g.parent) edges.insert({g.child, g.parent});

    CouplingReport report;
    report.edge_count = edges.size();
    std::map<std::string, std::size_t> index;
    for (const auto& c : graph.concepts) {
        index[c.name] = report.concepts.size();
        report.concepts.push_back({c.name, 0, 0});
    }
    for (const auto& [from, to] : edges) {
        ++report.concepts[index.at(from)].efferent;
        ++report.concepts[index.at(to)].afferent;
    }
    return report;
}

InstantiationComplexity instantiation_complexity(const MetamodelGraph& graph) {
    if (!graph.root) throw NoRoot();
    if (!graph.find_concept(*graph.root)) throw UnknownConcept(*graph.root, 0);
    InstantiationComplexity out;
    Expander(graph, out).run(*graph.root);
    out.a = static_cast<long>(out.elements.size()) - 1;
    out.x = out.a - out.b;
    return out;
}

std::string format_trace(const InstantiationComplexity& result, const CouplingReport& coupling) {
    std::string out = "MMo-2: A = " + std::to_string(result.a) + ", B = " + std::to_string(result.b) +
                      ", X = " + std::to_string(result.x) + "\n";
    for (const auto& line : result.trace) out += "  " + line + "\n";
    out += "coupling (" + std::to_string(coupling.edge_count) + " dependencies):\n";
    for (const auto& c : coupling.concepts)
        out += "  " + c.concept_name + ": afferent " + std::to_string(c.afferent) + ", efferent " +
               std::to_string(c.efferent) + "\n";
    return out;
}

Suggestions suggest_elements(const MetamodelGraph& graph, const EvaluationPlan* plan) {
    Suggestions s;
    s.fragment.plan_id = plan ? plan->id() : "";
    s.fragment.evaluator = "analyzer";
    s.fragment.notes = "structural analysis of metamodel " + quote(graph.name);

    auto wants = [&](const char* measure, const char* requirement) {
        return !plan || plan->selected_measures.count(measure) || plan->selected_requirements.count(requirement);
    };

    if (wants("MMo-1", "MQR10")) {
        if (!plan || plan->required_independent_concepts.empty()) {
            s.notes.push_back("MMo-1 not suggested: the plan lists no required_independent_concepts");
        } else {
            auto coupling = coupling_report(graph);
            double a = 0;
            for (const auto& n : plan->required_independent_concepts) {
                const auto* c = coupling.find(n);
                if (!c) throw UnknownConcept(n, 0);
                if (c->afferent == 0) ++a;
            }
            ElementValues e;
            e.measure_id = "MMo-1";
            e.numeric = {{"A", a}, {"B", static_cast<double>(plan->required_independent_concepts.size())}};
            s.fragment.entries.push_back(std::move(e));
        }
    }
    if (wants("MMo-2", "MQR11")) {
        if (!plan && !graph.root) {
            s.notes.push_back("MMo-2 not suggested: the metamodel declares no root");
        } else {
            auto ic = instantiation_complexity(graph);
            ElementValues e;
            e.measure_id = "MMo-2";
            e.numeric = {{"A", static_cast<double>(ic.a)}, {"B", static_cast<double>(ic.b)}};
            s.fragment.entries.push_back(std::move(e));
        }
    }
    const std::pair<const char*, const char*> totals[] = {{"CCp-1", "MQR02"}, {"UAp-3", "MQR07"}, {"UAp-4", "MQR08"}};
    for (const auto& [measure, requirement] : totals)
        if (wants(measure, requirement))
            s.fragment.candidates.push_back({measure, "B", static_cast<double>(graph.concepts.size()),
                                             "evaluator must confirm against the specification"});
    return s;
}

}  // namespace mquare
