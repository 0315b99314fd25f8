#include "mquare/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "json.hpp"

namespace mquare {

namespace {

using Type = ValueRange::Type;
using A = ArtifactKind;

constexpr ValueRange kUnit{Type::Interval, 0.0, 1.0};
constexpr ValueRange kUnboundedInteger{Type::UnboundedInteger, 0.0, 0.0};
constexpr ValueRange kNominalList{Type::NominalList, 0.0, 0.0};

constexpr const char* kFrom25023 = "Adapted from ISO/IEC 25023:2016 ";
constexpr const char* kFrom9126 = "Adapted from ISO/IEC TR 9126-3:2003";
constexpr const char* kNew = "New measure";

struct MeasureRow {
    const char* id;
    const char* name;
    const char* description;
    MeasureKind kind;
    const char* a_meaning;
    const char* b_meaning;
    Orientation orientation;
    ValueRange range;
    const char* interpretation;
    const char* requirement;
    std::string provenance;
};

MeasureSpec make_measure(const MeasureRow& row) {
    MeasureSpec m;
    m.id = row.id;
    m.name = row.name;
    m.description = row.description;
    m.kind = row.kind;
    switch (row.kind) {
    case MeasureKind::Nominal:
        m.elements = {{"items", row.a_meaning}};
        break;
    case MeasureKind::MeanOfDependent:
        m.elements = {{"Ai", row.a_meaning}, {"n", row.b_meaning}};
        break;
    default:
        m.elements = {{"A", row.a_meaning}, {"B", row.b_meaning}};
        break;
    }
    m.orientation = row.orientation;
    m.range = row.range;
    m.interpretation = row.interpretation;
    auto parts = parse_measure_id(m.id);
    m.sub_characteristic = parts ? parts->prefix() : std::string{};
    m.ordinal = parts ? parts->ordinal : 0;
    m.requirements = {row.requirement};
    m.provenance_note = row.provenance;
    return m;
}

std::vector<MeasureSpec> build_measures() {
    using K = MeasureKind;
    using O = Orientation;
    const std::string iso = kFrom25023;
    const MeasureRow rows[] = {
        {"CCc-1", "Conceptual foundation",
         "Which widely-accepted and sound theories, regulations, standards, and conventions is "
         "the metamodel compliant to?",
         K::Nominal,
         "A nominal list of widely-accepted and sound theories, regulations, standards, and "
         "conventions to which the metamodel is compliant.",
         "", O::Informational, kNominalList, "Nominal list; no numeric interpretation.", "MQR01",
         kFrom9126},
        {"CCc-2", "Backward Traceability",
         "Which are the metamodel concepts that can be traced back to their conceptual "
         "foundations?",
         K::Nominal,
         "A nominal list of each metamodel concept with its respective conceptual foundation.", "",
         O::Informational, kNominalList, "Nominal list; no numeric interpretation.", "MQR01",
         kNew},
        {"CCp-1", "Conceptual coverage", "What proportion of the specified concepts has been modeled?",
         K::OneMinusRatio, "Number of missing concepts.",
         "Number of concepts described in the metamodel specification.", O::HigherBetter, kUnit,
         "The closer to 1, the more complete.", "MQR02", iso + "Fcp-1-G Functional coverage"},
        {"CCr-1", "Conceptual correctness",
         "What proportion of metamodel concepts is modeled correctly?", K::OneMinusRatio,
         "Number of incorrectly modeled concepts.", "Number of concepts considered in the evaluation.",
         O::HigherBetter, kUnit, "The closer to 1, the more correct.", "MQR03",
         iso + "FCr-1-G Functional correctness"},
        {"CAp-1", "Conceptual appropriateness of usage objective",
         "What proportion of the metamodel concepts provides appropriate outcome to achieve a "
         "specific usage objective?",
         K::OneMinusRatio,
         "Number of missing or incorrectly modeled concepts among those that are required for "
         "achieving a specific usage objective.",
         "Number of concepts required for achieving a specific usage objective.", O::HigherBetter,
         kUnit, "The closer to 1, the more appropriateness.", "MQR04",
         iso + "FAp-1-G Functional appropriateness of usage objective"},
        {"CAp-2", "Conceptual appropriateness of metamodel",
         "What proportion of the metamodel concepts is required by the users to achieve their "
         "objectives provides appropriate outcome?",
         K::MeanOfDependent,
         "Appropriateness score for usage objective i, that is, the measured value of CAp-1 for "
         "i-th specific usage objective.",
         "Number of usage objectives.", O::HigherBetter, kUnit,
         "The closer to 1, the more appropriateness.", "MQR04",
         iso + "FAp-2-G Functional appropriateness of system"},
        {"UAp-1", "Description completeness",
         "What proportion of usage scenarios is described in the metamodel specifications?",
         K::Ratio,
         "Number of usage scenarios described in the user documents that match usage scenarios "
         "described in the metamodel specifications.",
         "Number of usage scenarios described in the metamodel specifications.", O::HigherBetter,
         kUnit, "The closer to 1, the more complete.", "MQR05",
         iso + "UAp-1-G Description completeness"},
        {"UAp-2", "Demonstration coverage",
         "What proportion of metamodel concepts requiring demonstration have demonstration "
         "capability?",
         K::Ratio, "Number of concepts with demonstration features.",
         "Number of concepts that could benefit from demonstration features.", O::HigherBetter,
         kUnit, "The closer to 1, the more capable.", "MQR06",
         iso + "UAp-2-S Demonstration coverage"},
        {"UAp-3", "Evident concepts", "What proportion of metamodel concepts is evident to the user?",
         K::Ratio, "Number of concepts evident to the user.",
         "Number of concepts described in the metamodel specification.", O::HigherBetter, kUnit,
         "The closer to 1, the better.", "MQR07", kFrom9126},
        {"UAp-4", "Concept understandability",
         "What proportion of metamodel concepts is correctly understood without prior training?",
         K::Ratio, "Number of concepts whose purpose is correctly understood without prior training.",
         "Number of concepts described in the metamodel specification.", O::HigherBetter, kUnit,
         "The closer to 1, the better.", "MQR08", kFrom9126},
        {"ULe-1", "User guide completeness",
         "What proportion of metamodel concepts is described in the user documentation that "
         "enable the use of the metamodel?",
         K::Ratio, "Number of concepts described in the user documentation as required.",
         "Number of concepts required to be documented.", O::HigherBetter, kUnit,
         "The closer to 1, the more complete.", "MQR09", iso + "ULe-1-G User guide completeness"},
        {"MMo-1", "Coupling of concepts",
         "How strongly are the concepts independent and how many concepts are free of impacts "
         "from changes to other metamodel concepts?",
         K::Ratio, "Number of concepts with no impact on others.",
         "Number of specified concepts which are required to be independent.", O::HigherBetter,
         kUnit, "The closer to 1, the less coupling.", "MQR10", iso + "MMo-1-G Coupling of concepts"},
        {"MMo-2", "Complexity of exercise",
         "How complex is building terminal models by analyzing the structure of the metamodel?",
         K::Difference, "Number of instantiation elements that must be done in order.",
         "Number of instantiation groups that must be completed, but in any order.",
         O::LowerBetter, kUnboundedInteger,
         "The higher, the more complex, i.e., the metamodel requires more ordered actions when "
         "creating the model elements.",
         "MQR11", "Sprinkle (2010), complexity of using a domain-specific language"},
        {"MRe-1", "Reusability per application domain",
         "How reusable is the metamodel to an application domain?", K::OneMinusRatio,
         "Number of usage scenarios which were not possible to be reused for an application "
         "domain in particular.",
         "Number of usage scenarios described in the metamodel specifications.", O::HigherBetter,
         kUnit, "The closer to 1, the better.", "MQR12", kNew},
        {"MMd-1", "Conceptual stability",
         "How stable is the metamodel specification during the metamodel's development life cycle?",
         K::OneMinusRatio, "Number of concepts changed during the metamodel's development life cycle.",
         "Number of concepts described in the metamodel specification.", O::HigherBetter, kUnit,
         "The closer to 1, the more stable.", "MQR13", kFrom9126},
        {"MMd-2", "Change recordability",
         "Are changes to metamodel specifications recorded adequately?", K::Ratio,
         "Number of changes in concepts having change comments confirmed in review.",
         "Number of concepts changed from original metamodel specification.", O::HigherBetter,
         kUnit, "The closer to 1, the more recordable. The change control 0 indicates poor change control.",
         "MQR14", kFrom9126},
        {"MMd-3", "Change impact", "What is the frequency of adverse impacts after modification?",
         K::OneMinusRatio, "Number of detected adverse impacts after modifications.",
         "Number of modifications made.", O::HigherBetter, kUnit, "The closer to 1, the better.",
         "MQR15", kFrom9126},
        {"MMd-4", "Modification impact localization",
         "How large is the impact of the modification on the metamodel?", K::Ratio,
         "Number of concepts affected by modification, confirmed in review.",
         "Number of concepts described in the metamodel specification.", O::LowerBetter, kUnit,
         "The closer to 0, the lesser impact of modification.", "MQR15", kFrom9126},
        {"MMd-5", "Modification correctness",
         "What proportion of modifications has been implemented correctly?", K::OneMinusRatio,
         "Number of modifications that caused an adverse impact within a defined period after made.",
         "Number of modifications made.", O::HigherBetter, kUnit, "The closer to 1, the better.",
         "MQR15", iso + "MMd-3-S Modification correctness"},
        {"PAd-1", "Adaptability per application domain",
         "How adaptable is the metamodel to an application domain?", K::OneMinusRatio,
         "Number of usage scenarios which were not possible to be modeled for an application "
         "domain in particular.",
         "Number of usage scenarios described in the metamodel specifications.", O::HigherBetter,
         kUnit, "The closer to 1, the better.", "MQR16", kNew},
        {"PRe-1", "Usage similarity",
         "What proportion of usage scenarios of the replaced metamodel can be modeled without any "
         "additional learning or workaround?",
         K::Ratio,
         "Number of usage scenarios which can be modeled without any additional learning or "
         "workaround.",
         "Number of usage scenarios in the replaced metamodel.", O::HigherBetter, kUnit,
         "The closer to 1, the better.", "MQR17", iso + "PRe-1-G Usage similarity"},
        {"PRe-2", "Metamodel quality equivalence",
         "What proportion of the quality measures is satisfied after replacing previous metamodel "
         "by this one?",
         K::Ratio,
         "Number of quality measures of the new metamodel which are better or equal to the "
         "replaced metamodel.",
         "Number of quality measures of the replaced metamodel that are relevant.", O::HigherBetter,
         kUnit, "The closer to 1, the better.", "MQR18",
         iso + "PRe-2-S Product quality equivalence"},
        {"PRe-3", "Conceptual inclusiveness",
         "Can the similar concepts easily be used after replacing previous metamodel by this one?",
         K::Ratio, "Number of concepts which produce similar results as before.",
         "Number of concepts which have to be used in the replaced metamodel.", O::HigherBetter,
         kUnit, "The closer to 1, the better.", "MQR19",
         iso + "PRe-3-S Functional inclusiveness"},
    };
    std::vector<MeasureSpec> out;
    for (const auto& row : rows) out.push_back(make_measure(row));
    return out;
}

std::vector<Characteristic> build_characteristics() {
    return {
        {"C", 'C', "Compliance",
         "The degree to which a metamodel must comply with items, such as widely accepted and "
         "sound theories, regulations, standards, and conventions.",
         {"CCc"}},
        {"CS", 'C', "Conceptual Suitability",
         "The degree to which a metamodel satisfies requirements when used under specified "
         "conditions.",
         {"CCp", "CCr", "CAp"}},
        {"U", 'U', "Usability",
         "The degree to which a metamodel can be used to achieve specific goals in a specified "
         "application domain.",
         {"UAp", "ULe"}},
        {"M", 'M', "Maintainability",
         "The degree of effectiveness and efficiency with which a metamodel can be modified by "
         "the intended maintainers.",
         {"MMo", "MRe", "MMd"}},
        {"P", 'P', "Portability",
         "The degree of effectiveness and efficiency with which a metamodel can be transferred "
         "from one application domain to another.",
         {"PAd", "PRe"}},
    };
}

std::vector<SubCharacteristic> build_sub_characteristics() {
    return {
        {"CCc", "Cc", "Conceptual compliance", "C",
         "The degree to which the conceptual foundation of a metamodel complies with widely "
         "accepted and sound theories, regulations, standards, and conventions.",
         {"CCc-1", "CCc-2"}},
        {"CCp", "Cp", "Conceptual completeness", "CS",
         "The degree to which the set of metamodel concepts covers all the specified requirements.",
         {"CCp-1"}},
        {"CCr", "Cr", "Conceptual correctness", "CS",
         "The degree to which the metamodel provides the correct modeling results with the "
         "needed degree of precision.",
         {"CCr-1"}},
        {"CAp", "Ap", "Conceptual appropriateness", "CS",
         "The degree to which the metamodel facilitates the accomplishment of modeling tasks, "
         "and for determining their adequacy for performing these tasks.",
         {"CAp-1", "CAp-2"}},
        {"UAp", "Ap", "Appropriateness recognizability", "U",
         "The degree to which users can recognize whether a metamodel is appropriate for their "
         "needs or not.",
         {"UAp-1", "UAp-2", "UAp-3", "UAp-4"}},
        {"ULe", "Le", "Learnability", "U",
         "The degree to which a metamodel can be used by specified users to achieve specified "
         "learning goals in a given context of use.",
         {"ULe-1"}},
        {"MMo", "Mo", "Modularity", "M",
         "The degree to which a metamodel is composed of discrete concepts such that a change of "
         "one concept has minimal impact on other concepts.",
         {"MMo-1", "MMo-2"}},
        {"MRe", "Re", "Reusability", "M",
         "The degree to which usage scenarios can be used in more than one metamodel.",
         {"MRe-1"}},
        {"MMd", "Md", "Modifiability", "M",
         "The degree to which a metamodel can be effectively and efficiently modified without "
         "introducing inconsistencies or degrading existing metamodel quality.",
         {"MMd-1", "MMd-2", "MMd-3", "MMd-4", "MMd-5"}},
        {"PAd", "Ad", "Adaptability", "P",
         "The degree to which a metamodel can effectively and efficiently be adapted for "
         "different application domains.",
         {"PAd-1"}},
        {"PRe", "Re", "Replaceability", "P",
         "The degree to which a metamodel can replace another specified metamodel for the same "
         "purpose in the same application domain.",
         {"PRe-1", "PRe-2", "PRe-3"}},
    };
}

std::vector<QualityRequirement> build_requirements() {
    const std::string replace =
        "The metamodel must be able to replace another specified metamodel for the same purpose "
        "in the same application domain";
    const std::string recognize =
        "The users must be able to recognize whether a metamodel is appropriate for their needs "
        "accordingly ";
    return {
        {"MQR01",
         "The metamodel conceptual foundation must comply with widely-accepted and sound "
         "theories, regulations, standards, and conventions.",
         "", "CCc", {"CCc-1", "CCc-2"}, {A::Specifications}},
        {"MQR02", "The metamodel must cover the concepts found in its specifications.", "", "CCp",
         {"CCp-1"}, {A::Specifications, A::Implementation}},
        {"MQR03", "The metamodel must represent the concepts found in its specifications correctly.",
         "", "CCr", {"CCr-1"}, {A::Specifications, A::Implementation}},
        {"MQR04",
         "The metamodel must represent the concepts required for achieving specific usage "
         "objectives.",
         "", "CAp", {"CAp-1", "CAp-2"},
         {A::Specifications, A::Implementation, A::UserDocumentation}},
        {"MQR05", recognize + "the usage scenarios described in the user documents.", "", "UAp",
         {"UAp-1"}, {A::Specifications, A::UserDocumentation}},
        {"MQR06", recognize + "the demonstration features of metamodel concepts.", "", "UAp",
         {"UAp-2"}, {A::Specifications, A::UserDocumentation}},
        {"MQR07", recognize + "the evident concepts to the user in the metamodel specifications.",
         "", "UAp", {"UAp-3"}, {A::Specifications, A::Implementation}},
        {"MQR08",
         "The users must be able to recognize whether a metamodel contain concepts whose purpose "
         "is correctly understood without prior training.",
         "", "UAp", {"UAp-4"}, {A::Specifications, A::Implementation}},
        {"MQR09", recognize + "the metamodel user documentation.", "", "ULe", {"ULe-1"},
         {A::Specifications, A::UserDocumentation}},
        {"MQR10",
         "The metamodel must be composed of discrete concepts such that a change of one concept "
         "has minimal impact on other concepts.",
         "", "MMo", {"MMo-1"}, {A::Implementation}},
        {"MQR11",
         "The metamodel must be composed of discrete concepts such that a creation of model "
         "elements does not enforce ordered modelling actions.",
         "", "MMo", {"MMo-2"}, {A::Implementation}},
        {"MQR12",
         "The metamodel must be able to be reused to modelling usage scenarios for different "
         "application domains.",
         "", "MRe", {"MRe-1"},
         {A::Specifications, A::UserDocumentation, A::DomainSpecifications}},
        {"MQR13",
         "The users must be able to recognize metamodel modifications accordingly the changes "
         "documented in the metamodel specification during metamodel development life cycle.",
         "", "MMd", {"MMd-1"}, {A::Specifications, A::HistoryDocumentation}},
        {"MQR14",
         "The users must be able to recognize metamodel modifications accordingly the change "
         "comments confirmed in review.",
         "", "MMd", {"MMd-2"}, {A::Specifications, A::HistoryDocumentation}},
        {"MQR15",
         "The metamodel must be reused modified without introducing inconsistencies or degrading "
         "metamodel quality.",
         "The metamodel must be able to be modified without introducing inconsistencies or "
         "degrading metamodel quality.",
         "MMd", {"MMd-3", "MMd-4", "MMd-5"}, {A::Specifications, A::HistoryDocumentation}},
        {"MQR16",
         "The metamodel must be able to be adapted to modelling usage scenarios for different "
         "application domains.",
         "", "PAd", {"PAd-1"}, {A::UserDocumentation, A::DomainSpecifications}},
        {"MQR17", replace + ", without introducing any additional learning or workaround.", "",
         "PRe", {"PRe-1"}, {A::UserDocumentation, A::ReplacedMetamodel}},
        {"MQR18", replace + ", without degrading metamodel quality degree.", "", "PRe", {"PRe-2"},
         {A::Specifications, A::Implementation, A::ReplacedMetamodel}},
        {"MQR19", replace + " by using similar concepts of previous metamodel.", "", "PRe",
         {"PRe-3"}, {A::Specifications, A::Implementation}},
    };
}

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
    auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
    return it == items.end() ? nullptr : &*it;
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
    case MeasureKind::Nominal: return "NOMINAL";
    case MeasureKind::OneMinusRatio: return "ONE_MINUS_RATIO";
    case MeasureKind::Ratio: return "RATIO";
    case MeasureKind::Difference: return "DIFFERENCE";
    case MeasureKind::MeanOfDependent: return "MEAN_OF_DEPENDENT";
    }
    return "?";
}

std::string_view to_string(Orientation orientation) {
    switch (orientation) {
    case Orientation::HigherBetter: return "HIGHER_BETTER";
    case Orientation::LowerBetter: return "LOWER_BETTER";
    case Orientation::Informational: return "INFORMATIONAL";
    }
    return "?";
}

std::string_view to_string(ArtifactKind artifact) {
    switch (artifact) {
    case A::Specifications: return "SPECIFICATIONS";
    case A::Implementation: return "IMPLEMENTATION";
    case A::UserDocumentation: return "USER_DOCUMENTATION";
    case A::HistoryDocumentation: return "HISTORY_DOCUMENTATION";
    case A::DomainSpecifications: return "DOMAIN_SPECIFICATIONS";
    case A::ReplacedMetamodel: return "REPLACED_METAMODEL";
    }
    return "?";
}

std::string_view artifact_label(ArtifactKind artifact) {
    switch (artifact) {
    case A::Specifications: return "Metamodel specifications (requirements and design documents)";
    case A::Implementation: return "Metamodel implementation";
    case A::UserDocumentation: return "Metamodel user documentation";
    case A::HistoryDocumentation: return "Metamodel history documentation";
    case A::DomainSpecifications: return "Specification of different application domains";
    case A::ReplacedMetamodel: return "Metamodel to be replaced by the evaluated metamodel";
    }
    return "?";
}

std::optional<ArtifactKind> parse_artifact_kind(std::string_view token) {
    for (auto kind : kAllArtifactKinds)
        if (to_string(kind) == token) return kind;
    return std::nullopt;
}

std::string ValueRange::describe() const {
    switch (type) {
    case Type::Interval: {
        std::ostringstream os;
        os << '[' << lower << ", " << upper << ']';
        return os.str();
    }
    case Type::UnboundedInteger: return "unbounded integer";
    case Type::NominalList: return "nominal list";
    }
    return "?";
}

std::string MeasureSpec::alias() const {
    std::string out;
    for (char c : id)
        if (c != '-') out.push_back(c);
    return out;
}

std::string MeasureIdParts::prefix() const {
    return std::string(1, characteristic_initial) + sub_letters;
}

std::optional<MeasureIdParts> parse_measure_id(std::string_view id) {
    // <Upper><Upper><lower>-<digits>
    if (id.size() < 5 || id[3] != '-') return std::nullopt;
    auto upper = [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; };
    auto lower = [](char c) { return std::islower(static_cast<unsigned char>(c)) != 0; };
    if (!upper(id[0]) || !upper(id[1]) || !lower(id[2])) return std::nullopt;
    MeasureIdParts parts;
    parts.characteristic_initial = id[0];
    parts.sub_letters = std::string(id.substr(1, 2));
    auto digits = id.substr(4);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), parts.ordinal);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || parts.ordinal < 1)
        return std::nullopt;
    return parts;
}

std::string measurement_function_text(const MeasureSpec& spec) {
    switch (spec.kind) {
    case MeasureKind::Nominal: return "Nominal list";
    case MeasureKind::OneMinusRatio: return "X = 1 - A / B";
    case MeasureKind::Ratio: return "X = A / B";
    case MeasureKind::Difference: return "X = A - B";
    case MeasureKind::MeanOfDependent: return "X = sum(Ai) / n";
    }
    return "?";
}

UnknownRequirement::UnknownRequirement(std::string id)
    : Error("unknown requirement: " + id), id_(std::move(id)) {}

UnknownMeasure::UnknownMeasure(std::string id)
    : Error("unknown measure: " + id), id_(std::move(id)) {}

Catalog::Catalog(std::vector<Characteristic> characteristics,
                 std::vector<SubCharacteristic> sub_characteristics,
                 std::vector<MeasureSpec> measures, std::vector<QualityRequirement> requirements)
    : characteristics_(std::move(characteristics)),
      sub_characteristics_(std::move(sub_characteristics)),
      measures_(std::move(measures)),
      requirements_(std::move(requirements)) {}

const MeasureSpec* Catalog::find_measure(std::string_view id) const {
    return find_by_id(measures_, id);
}

const MeasureSpec& Catalog::measure(std::string_view id) const {
    if (auto* m = find_measure(id)) return *m;
    throw UnknownMeasure(std::string(id));
}

const QualityRequirement* Catalog::find_requirement(std::string_view id) const {
    return find_by_id(requirements_, id);
}

const QualityRequirement& Catalog::requirement(std::string_view id) const {
    if (auto* r = find_requirement(id)) return *r;
    throw UnknownRequirement(std::string(id));
}

const SubCharacteristic* Catalog::find_sub_characteristic(std::string_view id) const {
    return find_by_id(sub_characteristics_, id);
}

const Characteristic* Catalog::find_characteristic(std::string_view id) const {
    return find_by_id(characteristics_, id);
}

const MeasureSpec* Catalog::find_measure_by_alias(std::string_view alias) const {
    for (const auto& m : measures_)
        if (m.alias() == alias) return &m;
    return nullptr;
}

std::vector<std::string> Catalog::measures_for_requirement(std::string_view req_id) const {
    return requirement(req_id).measures;
}

std::set<ArtifactKind> Catalog::required_artifacts(std::string_view req_id) const {
    return requirement(req_id).required_artifacts;
}

std::size_t Catalog::measure_index(std::string_view id) const {
    for (std::size_t i = 0; i < measures_.size(); ++i)
        if (measures_[i].id == id) return i;
    throw UnknownMeasure(std::string(id));
}

std::vector<std::string> Catalog::consistency_problems() const {
    std::vector<std::string> problems;
    auto report = [&](std::string msg) { problems.push_back(std::move(msg)); };

    for (const auto& c : characteristics_) {
        for (const auto& sid : c.sub_characteristics) {
            const auto* sc = find_sub_characteristic(sid);
            if (!sc) report("characteristic " + c.id + " lists unknown sub-characteristic " + sid);
            else if (sc->parent != c.id)
                report("sub-characteristic " + sid + " parent mismatch with " + c.id);
        }
    }
    for (const auto& sc : sub_characteristics_) {
        const auto* parent = find_characteristic(sc.parent);
        if (!parent) {
            report("sub-characteristic " + sc.id + " has unknown parent " + sc.parent);
            continue;
        }
        if (sc.id != std::string(1, parent->initial) + sc.code)
            report("sub-characteristic " + sc.id + " alias does not follow its code");
        for (const auto& mid : sc.measures) {
            const auto* m = find_measure(mid);
            if (!m) report("sub-characteristic " + sc.id + " lists unknown measure " + mid);
            else if (m->sub_characteristic != sc.id)
                report("measure " + mid + " sub-characteristic mismatch");
        }
    }
    std::map<std::string, int> covered;
    for (const auto& r : requirements_) {
        if (r.measures.empty()) report(r.id + " maps to no measure");
        if (r.required_artifacts.empty()) report(r.id + " requires no artifact");
        if (!find_sub_characteristic(r.sub_characteristic))
            report(r.id + " has unknown sub-characteristic");
        for (const auto& mid : r.measures) {
            ++covered[mid];
            const auto* m = find_measure(mid);
            if (!m) {
                report(r.id + " maps to unknown measure " + mid);
                continue;
            }
            if (std::find(m->requirements.begin(), m->requirements.end(), r.id) ==
                m->requirements.end())
                report("measure " + mid + " does not list " + r.id);
            if (m->sub_characteristic != r.sub_characteristic)
                report(r.id + " and " + mid + " disagree on sub-characteristic");
        }
    }
    for (const auto& m : measures_) {
        auto parts = parse_measure_id(m.id);
        if (!parts) {
            report("measure id " + m.id + " violates the id scheme");
            continue;
        }
        const auto* sc = find_sub_characteristic(parts->prefix());
        if (!sc || std::find(sc->measures.begin(), sc->measures.end(), m.id) == sc->measures.end())
            report("measure " + m.id + " not listed by its sub-characteristic");
        if (covered[m.id] != 1) report("measure " + m.id + " is not mapped by exactly one requirement");
    }
    return problems;
}

const Catalog& load_builtin_catalog() {
    static const Catalog catalog(build_characteristics(), build_sub_characteristics(),
                                 build_measures(), build_requirements());
    return catalog;
}

std::string export_catalog_json(const Catalog& catalog) {
    using nlohmann::json;
    json doc;
    doc["schema"] = "catalog-v1";

    json chars = json::array();
    for (const auto& c : catalog.characteristics()) {
        chars.push_back({{"id", c.id},
                         {"initial", std::string(1, c.initial)},
                         {"name", c.name},
                         {"description", c.description},
                         {"sub_characteristics", c.sub_characteristics}});
    }
    doc["characteristics"] = std::move(chars);

    json subs = json::array();
    for (const auto& sc : catalog.sub_characteristics()) {
        subs.push_back({{"id", sc.id},
                        {"code", sc.code},
                        {"name", sc.name},
                        {"parent", sc.parent},
                        {"description", sc.description},
                        {"measures", sc.measures}});
    }
    doc["sub_characteristics"] = std::move(subs);

    json measures = json::array();
    for (const auto& m : catalog.measures()) {
        json elements = json::array();
        for (const auto& e : m.elements)
            elements.push_back({{"symbol", e.symbol}, {"meaning", e.meaning}});
        json range = {{"type", m.range.describe()}};
        if (m.range.type == ValueRange::Type::Interval) {
            range["lower"] = m.range.lower;
            range["upper"] = m.range.upper;
        }
        measures.push_back({{"id", m.id},
                            {"alias", m.alias()},
                            {"name", m.name},
                            {"description", m.description},
                            {"kind", std::string(to_string(m.kind))},
                            {"elements", std::move(elements)},
                            {"orientation", std::string(to_string(m.orientation))},
                            {"value_range", std::move(range)},
                            {"interpretation", m.interpretation},
                            {"sub_characteristic", m.sub_characteristic},
                            {"requirements", m.requirements},
                            {"provenance_note", m.provenance_note}});
    }
    doc["measures"] = std::move(measures);

    json reqs = json::array();
    for (const auto& r : catalog.requirements()) {
        json artifacts = json::array();
        for (auto a : r.required_artifacts) artifacts.push_back(std::string(to_string(a)));
        json row = {{"id", r.id},
                    {"text", r.text},
                    {"sub_characteristic", r.sub_characteristic},
                    {"measures", r.measures},
                    {"required_artifacts", std::move(artifacts)}};
        if (!r.gloss.empty()) row["gloss"] = r.gloss;
        reqs.push_back(std::move(row));
    }
    doc["requirements"] = std::move(reqs);
    return doc.dump(2) + "\n";
}

}  // namespace mquare
