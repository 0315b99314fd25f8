#pragma once

#include <string>
#include <vector>

namespace mquare::detail {

/// Pipe table; cell text has '|' escaped and newlines flattened.
std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace mquare::detail
