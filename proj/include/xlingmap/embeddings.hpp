#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "xlingmap/error.hpp"
#include "xlingmap/text.hpp"

namespace xlingmap::embeddings {

struct Neighbor {
    std::string word;
    double similarity; // cosine, in [-1, 1]
};

// Immutable after load; vocabulary order is file order.
class EmbeddingModel {
public:
    EmbeddingModel() = default;

    EmbeddingModel(std::vector<std::string> words, std::vector<double> vectors, std::size_t dim)
        : words_(std::move(words)), vectors_(std::move(vectors)), dim_(dim) {
        if (dim_ == 0) throw Error(ErrorKind::Validation, "model dimensionality must be >= 1");
        if (vectors_.size() != words_.size() * dim_)
            throw Error(ErrorKind::Dimension, "vector storage does not match vocab size * dim");
        index_.reserve(words_.size());
        norms_.resize(words_.size());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i].empty())
                throw Error(ErrorKind::Validation, "empty word in model");
            if (!index_.emplace(words_[i], i).second)
                throw Error(ErrorKind::Validation, "duplicate word '" + words_[i] + "'");
            double sq = 0.0;
            for (std::size_t c = 0; c < dim_; ++c) {
                const double v = vectors_[i * dim_ + c];
                if (!std::isfinite(v))
                    throw Error(ErrorKind::Validation,
                                "non-finite component in vector of '" + words_[i] + "'");
                sq += v * v;
            }
            if (sq == 0.0)
                throw Error(ErrorKind::Validation, "all-zero vector for '" + words_[i] + "'");
            norms_[i] = std::sqrt(sq);
        }
    }

    std::size_t size() const noexcept { return words_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& words() const noexcept { return words_; }

    bool contains(std::string_view word) const {
        return index_.find(std::string(word)) != index_.end();
    }

    std::span<const double> vector(std::string_view word) const {
        const auto it = index_.find(std::string(word));
        if (it == index_.end())
            throw Error(ErrorKind::Oov, "out-of-vocabulary word '" + std::string(word) + "'");
        return row(it->second);
    }

    std::span<const double> row(std::size_t i) const {
        return {vectors_.data() + i * dim_, dim_};
    }

    double row_norm(std::size_t i) const { return norms_[i]; }

private:
    std::vector<std::string> words_;
    std::vector<double> vectors_; // size() * dim_, row-major
    std::size_t dim_ = 0;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> norms_;
};

// word2vec text format: header "vocab_size dim", then one "word v1 .. v_dim"
// line per word. Tolerates CRLF and one trailing newline, nothing else.
inline EmbeddingModel load_model(const std::string& path,
                                 std::optional<std::size_t> expected_dim = std::nullopt,
                                 bool normalize = false) {
    auto in = text::open_input(path);
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorKind::Parse, path + ": empty file");
    const auto header = text::split_ws(text::strip_cr(line));
    if (header.size() != 2)
        throw Error(ErrorKind::Parse, path + ": malformed header, expected 'vocab_size dim'");
    const std::size_t vocab_size = text::parse_uint(header[0], path + " header");
    const std::size_t dim = text::parse_uint(header[1], path + " header");
    if (vocab_size == 0 || dim == 0)
        throw Error(ErrorKind::Parse, path + ": vocab_size and dim must be positive");
    if (expected_dim && *expected_dim != dim)
        throw Error(ErrorKind::Dimension,
                    path + ": dim mismatch, expected " + std::to_string(*expected_dim) +
                        ", file has " + std::to_string(dim));

    std::vector<std::string> words;
    words.reserve(vocab_size);
    std::vector<double> vectors;
    vectors.reserve(vocab_size * dim);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = text::strip_cr(line);
        if (stripped.empty()) {
            if (words.size() == vocab_size) continue; // trailing newline
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(line_no) + ": empty row");
        }
        if (words.size() >= vocab_size)
            throw Error(ErrorKind::Parse,
                        path + ": more rows than header vocab_size " + std::to_string(vocab_size));
        const auto fields = text::split_ws(stripped);
        if (fields.size() != dim + 1)
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(line_no) +
                                              ": expected word + " + std::to_string(dim) +
                                              " values, got " + std::to_string(fields.size()));
        words.emplace_back(fields[0]);
        for (std::size_t c = 1; c <= dim; ++c) {
            const double v =
                text::parse_double(fields[c], path + ":" + std::to_string(line_no));
            if (!std::isfinite(v))
                throw Error(ErrorKind::Validation, path + ":" + std::to_string(line_no) +
                                                       ": non-finite component");
            vectors.push_back(v);
        }
    }
    if (words.size() != vocab_size)
        throw Error(ErrorKind::Parse, path + ": header promises " + std::to_string(vocab_size) +
                                          " rows, found " + std::to_string(words.size()));

    if (normalize) {
        for (std::size_t i = 0; i < words.size(); ++i) {
            double sq = 0.0;
            for (std::size_t c = 0; c < dim; ++c) sq += vectors[i * dim + c] * vectors[i * dim + c];
            const double n = std::sqrt(sq);
            if (n > 0.0)
                for (std::size_t c = 0; c < dim; ++c) vectors[i * dim + c] /= n;
        }
    }

    return EmbeddingModel(std::move(words), std::move(vectors), dim);
}

inline void save_model(const EmbeddingModel& model, const std::string& path) {
    auto out = text::open_output(path);
    out << model.size() << ' ' << model.dim() << '\n';
    for (std::size_t i = 0; i < model.size(); ++i) {
        out << model.words()[i];
        const auto row = model.row(i);
        for (double v : row) out << ' ' << text::format_double(v);
        out << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

// Exact top-k by cosine similarity; ties broken by ascending word order.
inline std::vector<Neighbor> nearest(const EmbeddingModel& model, std::span<const double> query,
                                     std::size_t k,
                                     const std::unordered_set<std::string>& exclude = {}) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "nearest: k must be positive");
    if (query.size() != model.dim())
        throw Error(ErrorKind::Dimension, "nearest: query length " + std::to_string(query.size()) +
                                              " != model dim " + std::to_string(model.dim()));
    double qsq = 0.0;
    for (double v : query) {
        if (!std::isfinite(v)) throw Error(ErrorKind::Validation, "nearest: non-finite query");
        qsq += v * v;
    }
    if (qsq == 0.0) throw Error(ErrorKind::Validation, "nearest: zero-norm query");
    const double qnorm = std::sqrt(qsq);

    std::vector<std::pair<double, std::uint32_t>> scored;
    scored.reserve(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
        if (!exclude.empty() && exclude.count(model.words()[i])) continue;
        const auto row = model.row(i);
        double d = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) d += query[c] * row[c];
        scored.emplace_back(d / (qnorm * model.row_norm(i)), static_cast<std::uint32_t>(i));
    }
    const std::size_t take = std::min(k, scored.size());
    const auto better = [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return model.words()[a.second] < model.words()[b.second];
    };
    std::partial_sort(scored.begin(), scored.begin() + take, scored.end(), better);

    std::vector<Neighbor> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        out.push_back({model.words()[scored[i].second], scored[i].first});
    return out;
}

} // namespace xlingmap::embeddings
