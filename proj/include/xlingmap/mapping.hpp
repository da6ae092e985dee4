#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xlingmap/embeddings.hpp"
#include "xlingmap/error.hpp"
#include "xlingmap/lexicon.hpp"
#include "xlingmap/linalg.hpp"
#include "xlingmap/prng.hpp"
#include "xlingmap/text.hpp"

namespace xlingmap::mapping {

// Training design: X is n x (d_src + 1) with a trailing ones column (bias),
// Y is n x d_tgt, rows aligned with kept_pairs.
struct PairedMatrices {
    linalg::Matrix x;
    linalg::Matrix y;
    std::vector<std::pair<std::string, std::string>> kept_pairs;

    std::size_t src_dim() const { return x.cols() - 1; }
    std::size_t tgt_dim() const { return y.cols(); }
};

// d_tgt x (d_src + 1); row i holds the regression weights for target
// component i, bias coefficient last.
struct TransformMatrix {
    linalg::Matrix w;
    std::size_t src_dim = 0;
    std::size_t tgt_dim = 0;
    double lambda = 0.0;
};

// Keeps a pair iff both words are present in their models.
inline PairedMatrices build_training_pairs(const Lexicon& lexicon,
                                           const embeddings::EmbeddingModel& src,
                                           const embeddings::EmbeddingModel& tgt) {
    PairedMatrices pm;
    for (const auto& pair : lexicon.pairs)
        if (src.contains(pair.first) && tgt.contains(pair.second)) pm.kept_pairs.push_back(pair);

    const std::size_t n = pm.kept_pairs.size();
    const std::size_t d_src = src.dim(), d_tgt = tgt.dim();
    if (n < d_src + 1)
        throw Error(ErrorKind::InsufficientData,
                    "insufficient pairs: " + std::to_string(n) + " usable, need at least " +
                        std::to_string(d_src + 1));

    pm.x = linalg::Matrix(n, d_src + 1);
    pm.y = linalg::Matrix(n, d_tgt);
    for (std::size_t r = 0; r < n; ++r) {
        const auto sv = src.vector(pm.kept_pairs[r].first);
        for (std::size_t c = 0; c < d_src; ++c) pm.x(r, c) = sv[c];
        pm.x(r, d_src) = 1.0;
        const auto tv = tgt.vector(pm.kept_pairs[r].second);
        for (std::size_t c = 0; c < d_tgt; ++c) pm.y(r, c) = tv[c];
    }
    return pm;
}

// Solves the (optionally ridge-regularized) normal equation for all target
// components at once: W row i = (XᵀX + λL)⁻¹ Xᵀ y_i, where L is the identity
// with a zero at the bias position, so the bias coefficient is never
// penalized. Cholesky factorization with an LU fallback; no explicit inverse.
inline TransformMatrix learn_transform(const PairedMatrices& pm, double lambda) {
    if (lambda < 0.0) throw Error(ErrorKind::InvalidArgument, "lambda must be >= 0");
    if (!pm.x.all_finite() || !pm.y.all_finite())
        throw Error(ErrorKind::Validation, "learn_transform: non-finite training data");
    const std::size_t p = pm.x.cols(); // d_src + 1
    if (pm.x.rows() < p)
        throw Error(ErrorKind::InsufficientData,
                    "insufficient pairs: " + std::to_string(pm.x.rows()) + " rows for " +
                        std::to_string(p) + " coefficients");

    linalg::Matrix normal = linalg::gram(pm.x);
    if (lambda > 0.0)
        for (std::size_t i = 0; i + 1 < p; ++i) normal(i, i) += lambda;

    linalg::Matrix rhs = linalg::matmul(linalg::transpose(pm.x), pm.y); // p x d_tgt
    linalg::Matrix coeffs = linalg::solve_sym(normal, rhs);
    if (!coeffs.all_finite())
        throw Error(ErrorKind::Singular, "singular normal matrix; try lambda > 0");

    TransformMatrix t;
    t.src_dim = p - 1;
    t.tgt_dim = pm.y.cols();
    t.lambda = lambda;
    t.w = linalg::transpose(coeffs); // d_tgt x (d_src + 1)
    return t;
}

// W · [v; 1]
inline std::vector<double> apply_transform(const TransformMatrix& t, std::span<const double> v) {
    if (v.size() != t.src_dim)
        throw Error(ErrorKind::Dimension, "apply_transform: vector length " +
                                              std::to_string(v.size()) + " != src_dim " +
                                              std::to_string(t.src_dim));
    for (double x : v)
        if (!std::isfinite(x))
            throw Error(ErrorKind::Validation, "apply_transform: non-finite input");
    std::vector<double> out(t.tgt_dim, 0.0);
    for (std::size_t r = 0; r < t.tgt_dim; ++r) {
        const auto row = t.w.row(r);
        double sum = 0.0;
        for (std::size_t c = 0; c < t.src_dim; ++c) sum += row[c] * v[c];
        out[r] = sum + row[t.src_dim];
    }
    return out;
}

inline std::vector<embeddings::Neighbor> translate_word(const TransformMatrix& t,
                                                        const embeddings::EmbeddingModel& src,
                                                        const embeddings::EmbeddingModel& tgt,
                                                        std::string_view word, std::size_t k) {
    const auto projected = apply_transform(t, src.vector(word));
    return embeddings::nearest(tgt, projected, k);
}

struct AccuracyReport {
    std::vector<std::size_t> ks;
    std::vector<double> accuracy; // aligned with ks
    std::size_t evaluable = 0;    // distinct source words scored
};

// accuracy@k = fraction of evaluable source words whose top-k list contains
// any of that word's dictionary targets. Pairs are filtered like training
// pairs; a source word with several targets counts once.
inline AccuracyReport eval_translation(const TransformMatrix& t, const Lexicon& test_pairs,
                                       const embeddings::EmbeddingModel& src,
                                       const embeddings::EmbeddingModel& tgt,
                                       const std::vector<std::size_t>& ks) {
    if (ks.empty()) throw Error(ErrorKind::InvalidArgument, "eval_translation: no ks given");
    for (const std::size_t k : ks)
        if (k == 0) throw Error(ErrorKind::InvalidArgument, "eval_translation: k must be positive");

    // group dictionary targets by source word, keeping first-seen source order
    std::vector<std::string> sources;
    std::map<std::string, std::unordered_set<std::string>> targets;
    for (const auto& [s, tg] : test_pairs.pairs) {
        if (!src.contains(s) || !tgt.contains(tg)) continue;
        auto [it, inserted] = targets.try_emplace(s);
        if (inserted) sources.push_back(s);
        it->second.insert(tg);
    }
    if (sources.empty())
        throw Error(ErrorKind::InsufficientData, "eval_translation: zero evaluable pairs");

    const std::size_t max_k = *std::max_element(ks.begin(), ks.end());
    std::vector<std::size_t> hits(ks.size(), 0);
    for (const auto& source : sources) {
        const auto neighbors = translate_word(t, src, tgt, source, max_k);
        const auto& truth = targets.at(source);
        std::size_t first_hit = neighbors.size(); // rank of first dictionary target
        for (std::size_t r = 0; r < neighbors.size(); ++r) {
            if (truth.count(neighbors[r].word)) {
                first_hit = r;
                break;
            }
        }
        for (std::size_t i = 0; i < ks.size(); ++i)
            if (first_hit < ks[i]) ++hits[i];
    }

    AccuracyReport report;
    report.ks = ks;
    report.evaluable = sources.size();
    for (std::size_t i = 0; i < ks.size(); ++i)
        report.accuracy.push_back(static_cast<double>(hits[i]) /
                                  static_cast<double>(sources.size()));
    return report;
}

// Deterministic seeded shuffle, then the first train_size pairs train and the
// next test_size pairs test.
inline std::pair<Lexicon, Lexicon> split_lexicon(const Lexicon& lexicon, std::size_t train_size,
                                                 std::size_t test_size, std::uint64_t seed) {
    if (train_size + test_size > lexicon.pairs.size())
        throw Error(ErrorKind::InsufficientData,
                    "split: lexicon has " + std::to_string(lexicon.pairs.size()) +
                        " pairs, need " + std::to_string(train_size + test_size));
    auto shuffled = lexicon.pairs;
    rng::Prng prng(seed, /*stream=*/1);
    rng::shuffle(shuffled, prng);
    Lexicon train, test;
    train.pairs.assign(shuffled.begin(), shuffled.begin() + train_size);
    test.pairs.assign(shuffled.begin() + train_size, shuffled.begin() + train_size + test_size);
    return {std::move(train), std::move(test)};
}

inline void save_transform(const TransformMatrix& t, const std::string& path) {
    nlohmann::ordered_json obj;
    obj["schema"] = "xlingmap/1";
    obj["src_dim"] = t.src_dim;
    obj["tgt_dim"] = t.tgt_dim;
    obj["lambda"] = t.lambda;
    obj["coefficients"] = t.w.data(); // row-major, d_tgt x (d_src + 1)
    auto out = text::open_output(path);
    out << obj.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

inline TransformMatrix load_transform(const std::string& path) {
    auto in = text::open_input(path);
    nlohmann::json obj;
    try {
        in >> obj;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": invalid JSON (" + e.what() + ")");
    }
    if (!obj.contains("src_dim") || !obj.contains("tgt_dim") || !obj.contains("lambda") ||
        !obj.contains("coefficients"))
        throw Error(ErrorKind::Parse, path + ": expected {src_dim, tgt_dim, lambda, coefficients}");
    TransformMatrix t;
    t.src_dim = obj["src_dim"].get<std::size_t>();
    t.tgt_dim = obj["tgt_dim"].get<std::size_t>();
    t.lambda = obj["lambda"].get<double>();
    const auto coeffs = obj["coefficients"].get<std::vector<double>>();
    if (coeffs.size() != t.tgt_dim * (t.src_dim + 1))
        throw Error(ErrorKind::Dimension, path + ": coefficient count does not match dims");
    t.w = linalg::Matrix(t.tgt_dim, t.src_dim + 1);
    t.w.data() = coeffs;
    if (!t.w.all_finite()) throw Error(ErrorKind::Validation, path + ": non-finite coefficient");
    return t;
}

} // namespace xlingmap::mapping
