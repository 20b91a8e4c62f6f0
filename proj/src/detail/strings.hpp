#pragma once

#include <string>
#include <vector>

#include "rlnc/errors.hpp"

namespace rlnc::detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits on `sep` at parenthesis depth zero, so "p=(1,1,0,1)" survives a
// comma split.
inline std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline unsigned long long parse_uint(const std::string& s, const std::string& what) {
    std::string t = trim(s);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a nonnegative integer for " + what + ", got '" + s + "'");
    return std::stoull(t);
}

// key=value pairs separated by commas; parenthesized values allowed.
inline std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& part : split_top_level(s, ',')) {
        std::string p = trim(part);
        if (p.empty()) continue;
        std::size_t eq = p.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value, got '" + p + "'");
        out.emplace_back(trim(p.substr(0, eq)), trim(p.substr(eq + 1)));
    }
    return out;
}

} // namespace rlnc::detail
