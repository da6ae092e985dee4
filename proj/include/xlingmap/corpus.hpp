#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "xlingmap/error.hpp"
#include "xlingmap/linalg.hpp"
#include "xlingmap/text.hpp"

namespace xlingmap::corpus {

struct Document {
    std::string id;
    std::string lang;
    std::vector<std::string> tokens; // lemma_POS convention, kept opaque
    std::optional<std::string> topic;
};

struct DocumentSet {
    std::vector<Document> docs;

    bool all_labeled() const {
        for (const auto& d : docs)
            if (!d.topic) return false;
        return true;
    }
};

struct Vocabulary {
    std::vector<std::string> terms; // descending collection frequency, ties lexicographic
    std::string provenance;         // "global" | "per_topic"
    std::size_t x = 0;
};

struct FeatureMatrix {
    std::vector<std::string> doc_ids;
    linalg::Matrix matrix; // |docs| x |features|, row order == doc_ids
    std::string feature_space;
    std::vector<std::string> feature_names;
};

// JSONL: one {"id", "lang", "tokens", ["topic"]} object per line.
inline DocumentSet load_documents(const std::string& path) {
    auto in = text::open_input(path);
    DocumentSet set;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = text::strip_cr(line);
        if (stripped.empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(stripped);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Parse,
                        path + ":" + std::to_string(line_no) + ": invalid JSON (" + e.what() + ")");
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("lang") ||
            !obj.contains("tokens") || !obj["id"].is_string() || !obj["lang"].is_string() ||
            !obj["tokens"].is_array())
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(line_no) +
                                              ": expected {id, lang, tokens[, topic]}");
        Document doc;
        doc.id = obj["id"].get<std::string>();
        doc.lang = obj["lang"].get<std::string>();
        for (const auto& t : obj["tokens"]) {
            if (!t.is_string())
                throw Error(ErrorKind::Parse,
                            path + ":" + std::to_string(line_no) + ": non-string token");
            doc.tokens.push_back(t.get<std::string>());
        }
        if (obj.contains("topic")) {
            if (!obj["topic"].is_string())
                throw Error(ErrorKind::Parse,
                            path + ":" + std::to_string(line_no) + ": non-string topic");
            doc.topic = obj["topic"].get<std::string>();
        }
        if (!seen_ids.insert(doc.id).second)
            throw Error(ErrorKind::Validation, path + ": duplicate document id '" + doc.id + "'");
        set.docs.push_back(std::move(doc));
    }
    return set;
}

inline void save_documents(const DocumentSet& set, const std::string& path) {
    auto out = text::open_output(path);
    for (const auto& doc : set.docs) {
        nlohmann::ordered_json obj;
        obj["id"] = doc.id;
        obj["lang"] = doc.lang;
        obj["tokens"] = doc.tokens;
        if (doc.topic) obj["topic"] = *doc.topic;
        out << obj.dump() << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

// Drops tokens whose PoS suffix is blocklisted (cleanup convenience; proper
// functional-word removal happens upstream of this tool).
inline DocumentSet filter_pos(const DocumentSet& set,
                              const std::unordered_set<std::string>& pos_blocklist) {
    if (pos_blocklist.empty()) return set;
    DocumentSet out;
    out.docs.reserve(set.docs.size());
    for (const auto& doc : set.docs) {
        Document filtered = doc;
        filtered.tokens.clear();
        for (const auto& token : doc.tokens) {
            const auto [lemma, pos] = text::split_lemma_pos(token);
            if (pos_blocklist.count(std::string(pos))) continue;
            filtered.tokens.push_back(token);
        }
        out.docs.push_back(std::move(filtered));
    }
    return out;
}

enum class VocabMode { Global, PerTopic };

inline VocabMode parse_vocab_mode(std::string_view name) {
    if (name == "global") return VocabMode::Global;
    if (name == "per_topic") return VocabMode::PerTopic;
    throw Error(ErrorKind::InvalidArgument, "unknown vocabulary mode '" + std::string(name) + "'");
}

namespace detail {

// Top-x tokens of a frequency table: frequency descending, ties lexicographic.
inline std::vector<std::string> top_x(const std::unordered_map<std::string, std::uint64_t>& freq,
                                      std::size_t x) {
    std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> out;
    out.reserve(std::min(x, ranked.size()));
    for (std::size_t i = 0; i < ranked.size() && i < x; ++i) out.push_back(ranked[i].first);
    return out;
}

} // namespace detail

inline Vocabulary select_vocabulary(const DocumentSet& set, std::size_t x, VocabMode mode) {
    if (x == 0) throw Error(ErrorKind::InvalidArgument, "vocabulary size x must be positive");

    std::unordered_map<std::string, std::uint64_t> global_freq;
    for (const auto& doc : set.docs)
        for (const auto& token : doc.tokens) ++global_freq[token];

    std::vector<std::string> selected;
    if (mode == VocabMode::Global) {
        selected = detail::top_x(global_freq, x);
    } else {
        std::map<std::string, std::unordered_map<std::string, std::uint64_t>> per_topic;
        for (const auto& doc : set.docs) {
            if (!doc.topic)
                throw Error(ErrorKind::Validation,
                            "per_topic vocabulary requires a topic label on every document; '" +
                                doc.id + "' has none");
            auto& freq = per_topic[*doc.topic];
            for (const auto& token : doc.tokens) ++freq[token];
        }
        std::unordered_set<std::string> uniq;
        for (const auto& [topic, freq] : per_topic)
            for (auto& term : detail::top_x(freq, x)) uniq.insert(std::move(term));
        selected.assign(uniq.begin(), uniq.end());
    }

    // final ordering by collection frequency, ties lexicographic
    std::sort(selected.begin(), selected.end(), [&](const std::string& a, const std::string& b) {
        const auto fa = global_freq.at(a), fb = global_freq.at(b);
        if (fa != fb) return fa > fb;
        return a < b;
    });

    Vocabulary vocab;
    vocab.terms = std::move(selected);
    vocab.provenance = mode == VocabMode::Global ? "global" : "per_topic";
    vocab.x = x;
    return vocab;
}

enum class BowScheme { Binary, Count, Tfidf };

inline BowScheme parse_bow_scheme(std::string_view name) {
    if (name == "binary") return BowScheme::Binary;
    if (name == "count") return BowScheme::Count;
    if (name == "tfidf") return BowScheme::Tfidf;
    throw Error(ErrorKind::InvalidArgument, "unknown BoW scheme '" + std::string(name) + "'");
}

inline std::string bow_scheme_name(BowScheme scheme) {
    switch (scheme) {
        case BowScheme::Binary: return "binary";
        case BowScheme::Count: return "count";
        case BowScheme::Tfidf: return "tfidf";
    }
    return "?";
}

// Out-of-vocabulary tokens are ignored. tf-idf is tf(t,d) * ln(N / df(t)) on
// raw counts; a term present in every document gets weight 0.
inline FeatureMatrix vectorize(const DocumentSet& set, const Vocabulary& vocab, BowScheme scheme) {
    if (vocab.terms.empty()) throw Error(ErrorKind::Validation, "vectorize: empty vocabulary");

    std::unordered_map<std::string, std::size_t> index;
    index.reserve(vocab.terms.size());
    for (std::size_t i = 0; i < vocab.terms.size(); ++i) index.emplace(vocab.terms[i], i);

    const std::size_t n = set.docs.size();
    const std::size_t m = vocab.terms.size();
    linalg::Matrix counts(n, m);
    for (std::size_t r = 0; r < n; ++r) {
        for (const auto& token : set.docs[r].tokens) {
            const auto it = index.find(token);
            if (it != index.end()) counts(r, it->second) += 1.0;
        }
    }

    FeatureMatrix fm;
    fm.doc_ids.reserve(n);
    for (const auto& doc : set.docs) fm.doc_ids.push_back(doc.id);
    fm.feature_names = vocab.terms;
    fm.feature_space = "bow:" + bow_scheme_name(scheme);

    switch (scheme) {
        case BowScheme::Count:
            fm.matrix = std::move(counts);
            break;
        case BowScheme::Binary:
            fm.matrix = counts;
            for (auto& v : fm.matrix.data()) v = v > 0.0 ? 1.0 : 0.0;
            break;
        case BowScheme::Tfidf: {
            std::vector<double> idf(m, 0.0);
            for (std::size_t c = 0; c < m; ++c) {
                std::size_t df = 0;
                for (std::size_t r = 0; r < n; ++r)
                    if (counts(r, c) > 0.0) ++df;
                idf[c] = df > 0 ? std::log(static_cast<double>(n) / static_cast<double>(df)) : 0.0;
            }
            fm.matrix = std::move(counts);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < m; ++c) fm.matrix(r, c) *= idf[c];
            break;
        }
    }
    return fm;
}

inline void save_feature_csv(const FeatureMatrix& fm, const std::string& path) {
    auto out = text::open_output(path);
    out << "doc_id";
    for (const auto& name : fm.feature_names) out << ',' << text::csv_escape(name);
    out << '\n';
    for (std::size_t r = 0; r < fm.matrix.rows(); ++r) {
        out << text::csv_escape(fm.doc_ids[r]);
        for (std::size_t c = 0; c < fm.matrix.cols(); ++c)
            out << ',' << text::format_double(fm.matrix(r, c));
        out << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

} // namespace xlingmap::corpus
