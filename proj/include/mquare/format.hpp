#pragma once

// Value rendering shared by plan documents, scorecards and reports.

#include <string>

#include "mquare/catalog.hpp"
#include "mquare/measurement.hpp"

namespace mquare {

/// At most two decimals, trailing zeros dropped but one kept ("1.0",
/// "0.75", "0.33"). Integral measures print without decimals.
std::string format_number(double value, bool integral = false);

/// Cell text for a measured value: number, "; "-joined items, or "n/a".
std::string format_value(const MeasureValue& value, const MeasureSpec& spec);

}  // namespace mquare
