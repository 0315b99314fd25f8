#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mquare/error.hpp"

namespace mquare::detail {

using nlohmann::json;

/// Parses JSON; duplicate_keys (optional) receives "a/b/key" paths for
/// object keys that occur more than once. The last occurrence wins.
json parse_json(std::string_view text, const std::string& what,
                std::vector<std::string>* duplicate_keys = nullptr);

const json& require_object(const json& j, const std::string& context);
std::string string_field(const json& obj, const char* key, const std::string& context,
                         bool required = false);
std::vector<std::string> string_list(const json& obj, const char* key, const std::string& context);

}  // namespace mquare::detail
