#include "json_util.hpp"

#include <set>

namespace mquare::detail {

namespace {

struct Frame {
    bool is_object = false;
    std::string name;
    std::string pending_key;
    std::set<std::string> keys;
};

std::string path_of(const std::vector<Frame>& stack, const std::string& key) {
    std::string out;
    for (std::size_t i = 1; i < stack.size(); ++i) {
        out += stack[i].name;
        out += '/';
    }
    return out + key;
}

}  // namespace

json parse_json(std::string_view text, const std::string& what,
                std::vector<std::string>* duplicate_keys) {
    std::vector<Frame> stack;
    auto callback = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
        switch (event) {
        case json::parse_event_t::object_start:
        case json::parse_event_t::array_start: {
            Frame f;
            f.is_object = event == json::parse_event_t::object_start;
            f.name = stack.empty() ? std::string{} : stack.back().pending_key;
            stack.push_back(std::move(f));
            break;
        }
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
            if (!stack.empty()) stack.pop_back();
            break;
        case json::parse_event_t::key:
            if (!stack.empty() && parsed.is_string()) {
                auto key = parsed.get<std::string>();
                if (!stack.back().keys.insert(key).second && duplicate_keys)
                    duplicate_keys->push_back(path_of(stack, key));
                stack.back().pending_key = key;
            }
            break;
        case json::parse_event_t::value:
            break;
        }
        return true;
    };
    try {
        return json::parse(text.begin(), text.end(), callback);
    } catch (const json::exception& e) {
        throw FormatError(what + ": invalid JSON: " + e.what());
    }
}

const json& require_object(const json& j, const std::string& context) {
    if (!j.is_object()) throw FormatError(context + ": expected a JSON object");
    return j;
}

std::string string_field(const json& obj, const char* key, const std::string& context,
                         bool required) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required) throw FormatError(context + ": missing field '" + key + "'");
        return {};
    }
    if (!it->is_string()) throw FormatError(context + ": field '" + key + "' must be a string");
    return it->get<std::string>();
}

std::vector<std::string> string_list(const json& obj, const char* key, const std::string& context) {
    std::vector<std::string> out;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return out;
    if (!it->is_array()) throw FormatError(context + ": field '" + key + "' must be an array");
    for (const auto& v : *it) {
        if (!v.is_string())
            throw FormatError(context + ": field '" + key + "' must contain strings only");
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace mquare::detail
