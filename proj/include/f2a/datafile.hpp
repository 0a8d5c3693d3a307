#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "f2a/errors.hpp"

namespace f2a {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw F2aError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw F2aError("cannot write file: " + path);
    out << content;
}

inline std::string trim_copy(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    while (!s.empty() && !notspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && !notspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

/// Plain-text data file: one entry per line, blank lines and '#' comments skipped.
/// Used for the keyword and refusal-pattern lists.
inline std::vector<std::string> load_line_entries(const std::string& path) {
    std::vector<std::string> entries;
    std::istringstream in(read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim_copy(line);
        if (t.empty() || t[0] == '#') continue;
        entries.push_back(t);
    }
    return entries;
}

} // namespace f2a
