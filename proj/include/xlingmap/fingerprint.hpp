#pragma once

#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "xlingmap/corpus.hpp"
#include "xlingmap/embeddings.hpp"
#include "xlingmap/error.hpp"
#include "xlingmap/mapping.hpp"

namespace xlingmap::fingerprint {

enum class Mode { Types, Tokens };

inline Mode parse_mode(std::string_view name) {
    if (name == "types") return Mode::Types;
    if (name == "tokens") return Mode::Tokens;
    throw Error(ErrorKind::InvalidArgument, "unknown fingerprint mode '" + std::string(name) + "'");
}

// Average vector of a document's words. Tokens mode averages the multiset
// (frequency-weighted); types mode averages distinct words once each, in
// first-occurrence order. Out-of-vocabulary tokens are skipped, never
// zero-imputed.
inline std::vector<double> doc_fingerprint(const embeddings::EmbeddingModel& model,
                                           std::span<const std::string> tokens, Mode mode) {
    std::vector<double> sum(model.dim(), 0.0);
    std::size_t used = 0;
    std::unordered_set<std::string> seen;
    for (const auto& token : tokens) {
        if (!model.contains(token)) continue;
        if (mode == Mode::Types && !seen.insert(token).second) continue;
        const auto v = model.vector(token);
        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += v[c];
        ++used;
    }
    if (used == 0)
        throw Error(ErrorKind::EmptyFingerprint, "no in-vocabulary tokens in document");
    for (auto& c : sum) c /= static_cast<double>(used);
    return sum;
}

// Source-language fingerprints are projected through the transform; target
// language documents stay in their own space. Row order follows docs order.
inline corpus::FeatureMatrix fingerprint_corpus(const corpus::DocumentSet& docs,
                                                const embeddings::EmbeddingModel& src_model,
                                                const embeddings::EmbeddingModel& tgt_model,
                                                const mapping::TransformMatrix& t,
                                                const std::string& src_lang,
                                                const std::string& tgt_lang, Mode mode) {
    if (src_model.dim() != t.src_dim)
        throw Error(ErrorKind::Dimension, "source model dim " + std::to_string(src_model.dim()) +
                                              " != transform src_dim " + std::to_string(t.src_dim));
    if (tgt_model.dim() != t.tgt_dim)
        throw Error(ErrorKind::Dimension, "target model dim " + std::to_string(tgt_model.dim()) +
                                              " != transform tgt_dim " + std::to_string(t.tgt_dim));

    corpus::FeatureMatrix fm;
    fm.feature_space = "fingerprint:d=" + std::to_string(t.tgt_dim);
    fm.feature_names.reserve(t.tgt_dim);
    for (std::size_t c = 0; c < t.tgt_dim; ++c) fm.feature_names.push_back("c" + std::to_string(c));
    fm.matrix = linalg::Matrix(docs.docs.size(), t.tgt_dim);

    for (std::size_t r = 0; r < docs.docs.size(); ++r) {
        const auto& doc = docs.docs[r];
        fm.doc_ids.push_back(doc.id);
        std::vector<double> fp;
        try {
            if (doc.lang == src_lang) {
                fp = mapping::apply_transform(t, doc_fingerprint(src_model, doc.tokens, mode));
            } else if (doc.lang == tgt_lang) {
                fp = doc_fingerprint(tgt_model, doc.tokens, mode);
            } else {
                throw Error(ErrorKind::Validation, "unknown language tag '" + doc.lang + "'");
            }
        } catch (const Error& e) {
            throw Error(e.kind(), "document '" + doc.id + "': " + e.what());
        }
        for (std::size_t c = 0; c < fp.size(); ++c) fm.matrix(r, c) = fp[c];
    }
    return fm;
}

} // namespace xlingmap::fingerprint
