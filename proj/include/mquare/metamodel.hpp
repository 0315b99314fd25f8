#pragma once

// Textual metamodel format (.mmdl) and structural analysis feeding the
// modularity measures.
//
//   metamodel "Name"
//   [abstract] concept Name [extends P, Q] [{ attr name: Type ... }]
//   ref Source.field -> Target [lo..hi|*] [containment]
//   root Name
//
// '#' starts a comment. Multiplicity defaults to [0..1].

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mquare/error.hpp"
#include "mquare/plan.hpp"
#include "mquare/session.hpp"

namespace mquare {

struct Attribute {
    std::string name;
    std::string type;
    friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Concept {
    std::string name;
    bool is_abstract = false;
    std::vector<Attribute> attributes;
    friend bool operator==(const Concept&, const Concept&) = default;
};

struct Reference {
    std::string source;
    std::string field;
    std::string target;
    unsigned lower = 0;
    std::optional<unsigned> upper = 1;  ///< nullopt = unbounded
    bool containment = false;

    bool mandatory() const { return lower >= 1; }
    std::string multiplicity() const;  ///< "[1..1]", "[0..*]"
    friend bool operator==(const Reference&, const Reference&) = default;
};

struct Generalization {
    std::string child;
    std::string parent;
    friend bool operator==(const Generalization&, const Generalization&) = default;
};

struct MetamodelGraph {
    std::string name;
    std::vector<Concept> concepts;  ///< declaration order
    std::vector<Reference> references;
    std::vector<Generalization> generalizations;
    std::optional<std::string> root;

    const Concept* find_concept(std::string_view name) const;
    std::vector<std::string> parents(std::string_view name) const;
    /// Transitive specializations, declaration order.
    std::vector<std::string> descendants(std::string_view name) const;
    /// The concept and its transitive generalizations, nearest first.
    std::vector<std::string> self_and_ancestors(std::string_view name) const;

    friend bool operator==(const MetamodelGraph&, const MetamodelGraph&) = default;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnknownConcept : public Error {
public:
    UnknownConcept(std::string name, std::size_t line);
    const std::string& name() const noexcept { return name_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string name_;
    std::size_t line_;
};

class CyclicGeneralization : public Error {
public:
    explicit CyclicGeneralization(std::vector<std::string> cycle);
    const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

class NoRoot : public Error {
public:
    NoRoot() : Error("metamodel declares no root concept") {}
};

class MandatoryContainmentCycle : public Error {
public:
    explicit MandatoryContainmentCycle(std::vector<std::string> path);
    const std::vector<std::string>& path() const noexcept { return path_; }

private:
    std::vector<std::string> path_;
};

MetamodelGraph parse_mmdl(std::string_view text);
std::string serialize_mmdl(const MetamodelGraph& graph);

struct ConceptCoupling {
    std::string concept_name;
    std::size_t afferent = 0;  ///< distinct concepts depending on it
    std::size_t efferent = 0;  ///< distinct concepts it depends on
    friend bool operator==(const ConceptCoupling&, const ConceptCoupling&) = default;
};

struct CouplingReport {
    std::vector<ConceptCoupling> concepts;  ///< declaration order
    std::size_t edge_count = 0;

    const ConceptCoupling* find(std::string_view name) const;
    friend bool operator==(const CouplingReport&, const CouplingReport&) = default;
};

/// Dependencies: reference source -> target and child -> parent, distinct
/// pairs, self-references excluded.
CouplingReport coupling_report(const MetamodelGraph& graph);

/// One node of the mandatory instantiation tree.
struct InstantiationElement {
    std::string concept_name;  ///< declared type of the containment
    std::vector<std::string> alternatives;  ///< concrete concepts collapsed into it
    std::optional<std::size_t> container;   ///< index into elements; nullopt for the root
    std::string via;                         ///< "R.x", empty for the root
    friend bool operator==(const InstantiationElement&, const InstantiationElement&) = default;
};

struct InstantiationComplexity {
    long a = 0;  ///< elements that must follow their container
    long b = 0;  ///< containers with at least two mandatory children
    long x = 0;  ///< a - b
    std::vector<InstantiationElement> elements;  ///< depth-first, root first
    std::vector<std::string> trace;
};

inline constexpr std::size_t kMaxInstantiationElements = 10000;

InstantiationComplexity instantiation_complexity(const MetamodelGraph& graph);

/// Trace text, one line per entry.
std::string format_trace(const InstantiationComplexity& result, const CouplingReport& coupling);

struct Suggestions {
    MeasurementSession fragment;  ///< evaluator "analyzer"
    std::vector<std::string> notes;
};

/// Prefilled elements for the measures the plan asks for. Without a plan,
/// every structurally derivable element is proposed.
Suggestions suggest_elements(const MetamodelGraph& graph, const EvaluationPlan* plan);

}  // namespace mquare
