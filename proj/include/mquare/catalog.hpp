#pragma once

// Built-in quality catalog: characteristics, sub-characteristics, the 23
// measures, the 19 requirements and the requirement/artifact matrix.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mquare/error.hpp"

namespace mquare {

enum class MeasureKind { Nominal, OneMinusRatio, Ratio, Difference, MeanOfDependent };

enum class Orientation { HigherBetter, LowerBetter, Informational };

enum class ArtifactKind {
    Specifications,
    Implementation,
    UserDocumentation,
    HistoryDocumentation,
    DomainSpecifications,
    ReplacedMetamodel,
};

inline constexpr ArtifactKind kAllArtifactKinds[] = {
    ArtifactKind::Specifications,       ArtifactKind::Implementation,
    ArtifactKind::UserDocumentation,    ArtifactKind::HistoryDocumentation,
    ArtifactKind::DomainSpecifications, ArtifactKind::ReplacedMetamodel,
};

std::string_view to_string(MeasureKind kind);
std::string_view to_string(Orientation orientation);
/// Upper-case token used in plan files, e.g. "USER_DOCUMENTATION".
std::string_view to_string(ArtifactKind artifact);
/// Human-readable label as printed in plan documents.
std::string_view artifact_label(ArtifactKind artifact);
std::optional<ArtifactKind> parse_artifact_kind(std::string_view token);

struct ValueRange {
    enum class Type { Interval, UnboundedInteger, NominalList };
    Type type = Type::Interval;
    double lower = 0.0;
    double upper = 1.0;

    std::string describe() const;
    friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

/// A named input of a measurement function (A, B, Ai, n).
struct MeasureElement {
    std::string symbol;
    std::string meaning;
    friend bool operator==(const MeasureElement&, const MeasureElement&) = default;
};

struct Characteristic {
    std::string id;  ///< unique short code, e.g. "C", "CS"
    char initial = '?';  ///< letter used in measure ids
    std::string name;
    std::string description;
    std::vector<std::string> sub_characteristics;
    friend bool operator==(const Characteristic&, const Characteristic&) = default;
};

struct SubCharacteristic {
    std::string id;    ///< formula alias, e.g. "CAp"; unique across the model
    std::string code;  ///< two-letter suffix, e.g. "Ap"; not unique on its own
    std::string name;
    std::string parent;  ///< Characteristic id
    std::string description;
    std::vector<std::string> measures;
    friend bool operator==(const SubCharacteristic&, const SubCharacteristic&) = default;
};

struct MeasureSpec {
    std::string id;  ///< e.g. "CCp-1"
    std::string name;
    std::string description;  ///< the question the measure answers
    MeasureKind kind = MeasureKind::Ratio;
    std::vector<MeasureElement> elements;
    Orientation orientation = Orientation::HigherBetter;
    ValueRange range;
    std::string interpretation;
    std::string sub_characteristic;
    std::vector<std::string> requirements;
    std::string provenance_note;
    int ordinal = 0;

    /// Formula identifier: the id without its dash ("CCp-1" -> "CCp1").
    std::string alias() const;
    bool is_numeric() const { return kind != MeasureKind::Nominal; }
    bool is_ratio_family() const {
        return kind == MeasureKind::Ratio || kind == MeasureKind::OneMinusRatio ||
               kind == MeasureKind::MeanOfDependent;
    }
    friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

struct QualityRequirement {
    std::string id;  ///< "MQR01".."MQR19"
    std::string text;  ///< verbatim wording
    std::string gloss;  ///< normalized reading where the wording is defective; else empty
    std::string sub_characteristic;
    std::vector<std::string> measures;
    std::set<ArtifactKind> required_artifacts;
    friend bool operator==(const QualityRequirement&, const QualityRequirement&) = default;
};

/// Decomposition of a measure id: <initial><two letters>-<ordinal>.
struct MeasureIdParts {
    char characteristic_initial = '?';
    std::string sub_letters;
    int ordinal = 0;

    std::string prefix() const;  ///< e.g. "CAp"
};

std::optional<MeasureIdParts> parse_measure_id(std::string_view id);

/// Printed measurement function, e.g. "X = 1 - A / B".
std::string measurement_function_text(const MeasureSpec& spec);

class UnknownRequirement : public Error {
public:
    explicit UnknownRequirement(std::string id);
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class UnknownMeasure : public Error {
public:
    explicit UnknownMeasure(std::string id);
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class Catalog {
public:
    Catalog(std::vector<Characteristic> characteristics,
            std::vector<SubCharacteristic> sub_characteristics,
            std::vector<MeasureSpec> measures,
            std::vector<QualityRequirement> requirements);

    const std::vector<Characteristic>& characteristics() const noexcept { return characteristics_; }
    const std::vector<SubCharacteristic>& sub_characteristics() const noexcept {
        return sub_characteristics_;
    }
    /// Measures in catalog order: characteristic, sub-characteristic, ordinal.
    const std::vector<MeasureSpec>& measures() const noexcept { return measures_; }
    const std::vector<QualityRequirement>& requirements() const noexcept { return requirements_; }

    const MeasureSpec* find_measure(std::string_view id) const;
    const MeasureSpec& measure(std::string_view id) const;
    const QualityRequirement* find_requirement(std::string_view id) const;
    const QualityRequirement& requirement(std::string_view id) const;
    const SubCharacteristic* find_sub_characteristic(std::string_view id) const;
    const Characteristic* find_characteristic(std::string_view id) const;
    /// Resolves a measure alias such as "CAp1".
    const MeasureSpec* find_measure_by_alias(std::string_view alias) const;

    std::vector<std::string> measures_for_requirement(std::string_view req_id) const;
    std::set<ArtifactKind> required_artifacts(std::string_view req_id) const;

    /// Position of a measure in catalog order; UnknownMeasure if absent.
    std::size_t measure_index(std::string_view id) const;

    /// Empty when every cross reference in the catalog is consistent.
    std::vector<std::string> consistency_problems() const;

    friend bool operator==(const Catalog&, const Catalog&) = default;

private:
    std::vector<Characteristic> characteristics_;
    std::vector<SubCharacteristic> sub_characteristics_;
    std::vector<MeasureSpec> measures_;
    std::vector<QualityRequirement> requirements_;
};

/// The compiled-in catalog. Built once; every call returns the same object.
const Catalog& load_builtin_catalog();

/// Canonical "catalog-v1" export: UTF-8 JSON, sorted keys, 2-space indent.
std::string export_catalog_json(const Catalog& catalog);

}  // namespace mquare
