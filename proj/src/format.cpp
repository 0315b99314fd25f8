#include "mquare/format.hpp"

#include <cmath>
#include <cstdio>

#include "markdown.hpp"

namespace mquare {

std::string format_number(double value, bool integral) {
    char buf[64];
    if (integral) {
        std::snprintf(buf, sizeof buf, "%.0f", value);
        std::string s = buf;
        return s == "-0" ? "0" : s;
    }
    std::snprintf(buf, sizeof buf, "%.2f", value);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
    return s;
}

std::string format_value(const MeasureValue& value, const MeasureSpec& spec) {
    if (value.is_not_applicable()) return "n/a";
    if (value.is_nominal()) return value.items().empty() ? "(none)" : detail::join(value.items(), "; ");
    bool integral = spec.range.type == ValueRange::Type::UnboundedInteger;
    return format_number(value.number(), integral);
}

namespace detail {

namespace {

std::string cell(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n' || c == '\r') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

std::string row_text(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) out += " " + cell(c) + " |";
    return out + "\n";
}

}  // namespace

std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
    std::string out = row_text(header);
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
    out += "\n";
    for (const auto& r : rows) out += row_text(r);
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace detail

}  // namespace mquare
