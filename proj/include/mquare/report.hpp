#pragma once

// Final evaluation report: five numbered sections in Markdown.

#include <string>
#include <string_view>
#include <vector>

#include "mquare/catalog.hpp"
#include "mquare/error.hpp"
#include "mquare/plan.hpp"
#include "mquare/scoring.hpp"

namespace mquare {

struct EvaluatorInfo {
    std::string name;
    std::string qualifications;
    friend bool operator==(const EvaluatorInfo&, const EvaluatorInfo&) = default;
};

/// Prose the tool passes through verbatim.
struct ReportMeta {
    std::vector<EvaluatorInfo> evaluators;
    std::string evaluation_period;
    std::string problems;
    std::string analyses;
    std::string review_notes;
    friend bool operator==(const ReportMeta&, const ReportMeta&) = default;
};

ReportMeta parse_report_meta_json(std::string_view text);

class PlanScorecardMismatch : public Error {
public:
    using Error::Error;
};

std::string render_report(const EvaluationPlan& plan, const Scorecard& scorecard, const ReportMeta& meta,
                          const Catalog& catalog = load_builtin_catalog());

}  // namespace mquare
