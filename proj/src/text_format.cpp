#include "ginscale/text_format.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "ginscale/errors.hpp"

namespace ginscale {

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_real(std::string_view text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw DomainError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

unsigned long long parse_unsigned(std::string_view text) {
    unsigned long long value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw DomainError("not a non-negative integer: '" + std::string(text) + "'");
    }
    return value;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> csv_split(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    std::size_t i = 0;
    while (true) {
        current.clear();
        if (i < line.size() && line[i] == '"') {
            ++i;
            while (true) {
                if (i >= line.size()) throw DomainError("unterminated quoted CSV field");
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        current += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                current += line[i++];
            }
            if (i < line.size() && line[i] != ',') throw DomainError("junk after quoted CSV field");
        } else {
            while (i < line.size() && line[i] != ',') current += line[i++];
        }
        fields.push_back(current);
        if (i >= line.size()) break;
        ++i;  // comma
    }
    return fields;
}

}  // namespace ginscale
