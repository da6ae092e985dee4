#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xlingmap/error.hpp"
#include "xlingmap/text.hpp"

namespace xlingmap::mapping {

// Ordered (src, tgt) translation pairs. A source word may map to several
// targets; exact duplicate pairs are dropped at load.
struct Lexicon {
    std::vector<std::pair<std::string, std::string>> pairs;
};

// UTF-8 TSV, one "src<TAB>tgt" per line, '#' lines are comments.
inline Lexicon load_lexicon(const std::string& path) {
    auto in = text::open_input(path);
    Lexicon lex;
    std::set<std::pair<std::string, std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = text::strip_cr(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto fields = text::split_char(stripped, '\t');
        if (fields.size() != 2)
            throw Error(ErrorKind::Parse,
                        path + ":" + std::to_string(line_no) + ": expected 'src<TAB>tgt'");
        if (fields[0].empty() || fields[1].empty())
            throw Error(ErrorKind::Validation,
                        path + ":" + std::to_string(line_no) + ": empty pair member");
        std::pair<std::string, std::string> pair{std::string(fields[0]), std::string(fields[1])};
        if (seen.insert(pair).second) lex.pairs.push_back(std::move(pair));
    }
    return lex;
}

inline void save_lexicon(const Lexicon& lex, const std::string& path) {
    auto out = text::open_output(path);
    for (const auto& [src, tgt] : lex.pairs) out << src << '\t' << tgt << '\n';
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

} // namespace xlingmap::mapping
