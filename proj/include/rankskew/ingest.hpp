#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rankskew/descriptive.hpp"
#include "rankskew/error.hpp"

namespace rankskew {

struct IngestedDataset {
    std::string name;
    Sample sample;
    std::string source;
    std::size_t skipped = 0; ///< blank and '#' comment lines
};

/// Numbers separated by commas and/or whitespace. Lines whose first
/// non-blank character is '#' are comments. A first content line holding a
/// single non-numeric token is taken as a column header and becomes the
/// dataset name.
[[nodiscard]] inline IngestedDataset parse_dataset(std::string_view text, std::string source = "<stdin>") {
    std::vector<double> values;
    std::string name;
    std::size_t skipped = 0;
    std::size_t line_no = 0;
    bool seen_content = false;

    auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; };

    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') {
            ++skipped;
            continue;
        }

        struct Token {
            std::string_view text;
            std::size_t column;
        };
        std::vector<Token> tokens;
        for (std::size_t i = 0; i < line.size();) {
            if (is_sep(line[i])) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && !is_sep(line[j])) {
                ++j;
            }
            tokens.push_back({line.substr(i, j - i), i + 1});
            i = j;
        }

        const bool header_candidate = !seen_content && tokens.size() == 1;
        seen_content = true;
        for (const auto& tok : tokens) {
            double v = 0.0;
            const char* b = tok.text.data();
            const char* e = b + tok.text.size();
            if (!tok.text.empty() && *b == '+') {
                ++b;
            }
            const auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc{} || ptr != e) {
                if (header_candidate) {
                    name = std::string(tok.text);
                    break;
                }
                throw ParseError(line_no, tok.column, "'" + std::string(tok.text) + "' is not a number");
            }
            if (!std::isfinite(v)) {
                throw ParseError(line_no, tok.column, "'" + std::string(tok.text) + "' is not finite");
            }
            values.push_back(v);
        }
    }
    if (values.empty()) {
        throw Error(ErrorKind::EmptyInput, "no numeric values in " + source);
    }
    if (name.empty()) {
        name = source;
    }
    return {std::move(name), Sample(std::move(values)), std::move(source), skipped};
}

[[nodiscard]] inline IngestedDataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), path);
}

} // namespace rankskew
