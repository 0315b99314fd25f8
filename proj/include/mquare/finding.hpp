#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace mquare {

enum class Severity { Error, Warning };

/// One problem found while loading or validating an input. ERROR findings
/// block evaluation; WARNING findings do not.
struct ValidationFinding {
    Severity severity = Severity::Error;
    std::string code;     ///< short identifier, e.g. "artifact-missing"
    std::string message;
    std::string subject;  ///< offending field or id

    friend bool operator==(const ValidationFinding&, const ValidationFinding&) = default;
};

inline std::string_view to_string(Severity s) { return s == Severity::Error ? "ERROR" : "WARNING"; }

/// "ERROR artifact-missing: MQR17 requires ..."
inline std::string format_finding(const ValidationFinding& f) {
    return std::string(to_string(f.severity)) + " " + f.code + ": " + f.message;
}

inline bool has_errors(const std::vector<ValidationFinding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const ValidationFinding& f) { return f.severity == Severity::Error; });
}

}  // namespace mquare
