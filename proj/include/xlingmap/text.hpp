#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "xlingmap/error.hpp"

namespace xlingmap::text {

// Shortest round-trip formatting; parse_double(format_double(x)) == x bitwise.
inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw Error(ErrorKind::InvalidArgument, "cannot format value");
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view token, const std::string& context) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw Error(ErrorKind::Parse, context + ": bad number '" + std::string(token) + "'");
    return value;
}

inline std::uint64_t parse_uint(std::string_view token, const std::string& context) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw Error(ErrorKind::Parse, context + ": bad integer '" + std::string(token) + "'");
    return value;
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

inline std::vector<std::string_view> split_char(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

// Decodes UTF-8 into Unicode scalar values; rejects malformed sequences.
inline std::u32string utf8_decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        std::size_t len = 0;
        if (b0 < 0x80) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xe0) == 0xc0) {
            cp = b0 & 0x1f;
            len = 2;
        } else if ((b0 & 0xf0) == 0xe0) {
            cp = b0 & 0x0f;
            len = 3;
        } else if ((b0 & 0xf8) == 0xf0) {
            cp = b0 & 0x07;
            len = 4;
        } else {
            throw Error(ErrorKind::Parse, "invalid UTF-8 byte in token");
        }
        if (i + len > s.size()) throw Error(ErrorKind::Parse, "truncated UTF-8 sequence");
        for (std::size_t j = 1; j < len; ++j) {
            const unsigned char b = static_cast<unsigned char>(s[i + j]);
            if ((b & 0xc0) != 0x80) throw Error(ErrorKind::Parse, "invalid UTF-8 continuation byte");
            cp = (cp << 6) | (b & 0x3f);
        }
        // overlong / out-of-range / surrogate checks
        static constexpr char32_t min_cp[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < min_cp[len] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff))
            throw Error(ErrorKind::Parse, "invalid UTF-8 scalar value");
        out.push_back(cp);
        i += len;
    }
    return out;
}

// Splits a `lemma_POS` token at the last underscore; tokens without an
// underscore get an empty PoS.
inline std::pair<std::string_view, std::string_view> split_lemma_pos(std::string_view token) {
    const std::size_t pos = token.rfind('_');
    if (pos == std::string_view::npos) return {token, std::string_view{}};
    return {token.substr(0, pos), token.substr(pos + 1)};
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
    return out;
}

inline std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

} // namespace xlingmap::text
