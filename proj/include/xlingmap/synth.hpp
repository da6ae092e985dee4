#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "xlingmap/corpus.hpp"
#include "xlingmap/embeddings.hpp"
#include "xlingmap/error.hpp"
#include "xlingmap/lexicon.hpp"
#include "xlingmap/linalg.hpp"
#include "xlingmap/mapping.hpp"
#include "xlingmap/prng.hpp"

namespace xlingmap::synth {

struct BilingualFixture {
    embeddings::EmbeddingModel src;
    embeddings::EmbeddingModel tgt;
    mapping::Lexicon lexicon;
    mapping::TransformMatrix gold;  // the map that generated the target space
};

namespace detail {

inline std::string word_id(const std::string& prefix, std::size_t index) {
    std::string digits = std::to_string(index);
    std::string out = prefix;
    for (std::size_t i = digits.size(); i < 6; ++i) out += '0';
    out += digits;
    out += "_S";  // every synthetic token is tagged as a noun
    return out;
}

}  // namespace detail

// Source vectors are i.i.d. standard Gaussian; the target space is a random
// affine image tgt_i = A [src_i; 1] + noise. Target word ids are a seeded
// permutation of the source indices so surface forms carry no pairing signal;
// the returned lexicon holds the true pairs and `gold` holds A.
inline BilingualFixture gen_bilingual_embeddings(std::size_t vocab_size, std::size_t d,
                                                 double noise_sigma, std::uint64_t seed,
                                                 const std::string& src_prefix = "uk",
                                                 const std::string& tgt_prefix = "ru") {
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
    if (vocab_size <= d + 1)
        throw Error(ErrorKind::InvalidArgument, "vocab_size must exceed dim + 1");
    if (noise_sigma < 0.0)
        throw Error(ErrorKind::InvalidArgument, "noise sigma must be non-negative");

    rng::Prng vec_rng(seed, 0);
    rng::Prng map_rng(seed, 1);
    rng::Prng noise_rng(seed, 2);
    rng::Prng perm_rng(seed, 3);

    std::vector<double> src_flat(vocab_size * d);
    for (auto& v : src_flat) v = vec_rng.normal();

    linalg::Matrix a(d, d + 1);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c <= d; ++c) a(r, c) = map_rng.normal();

    std::vector<double> tgt_flat(vocab_size * d);
    std::vector<double> lifted(d + 1, 1.0);
    for (std::size_t i = 0; i < vocab_size; ++i) {
        for (std::size_t c = 0; c < d; ++c) lifted[c] = src_flat[i * d + c];
        for (std::size_t r = 0; r < d; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c <= d; ++c) acc += a(r, c) * lifted[c];
            tgt_flat[i * d + r] = acc + (noise_sigma > 0.0 ? noise_rng.normal(0.0, noise_sigma) : 0.0);
        }
    }

    std::vector<std::size_t> perm(vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i) perm[i] = i;
    rng::shuffle(perm, perm_rng);

    std::vector<std::string> src_words(vocab_size), tgt_words(vocab_size);
    BilingualFixture fixture;
    fixture.lexicon.pairs.reserve(vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i) {
        src_words[i] = detail::word_id(src_prefix, i);
        tgt_words[i] = detail::word_id(tgt_prefix, perm[i]);
        fixture.lexicon.pairs.emplace_back(src_words[i], tgt_words[i]);
    }

    fixture.src = embeddings::EmbeddingModel(std::move(src_words), std::move(src_flat), d);
    fixture.tgt = embeddings::EmbeddingModel(std::move(tgt_words), std::move(tgt_flat), d);
    fixture.gold.w = std::move(a);
    fixture.gold.src_dim = d;
    fixture.gold.tgt_dim = d;
    fixture.gold.lambda = 0.0;
    return fixture;
}

struct TopicCorpusParams {
    std::size_t topics = 3;
    std::size_t docs_per_topic_per_lang = 100;
    std::size_t doc_len = 200;
    std::size_t vocab_per_topic = 150;
    std::size_t shared_noise_vocab = 50;
    double signature_frac = 0.8;  // rest of each document comes from shared noise
    double tgt_topic_blur = 0.0;  // chance a tgt-side signature draw leaks into another topic
    std::string src_lang = "uk";
    std::string tgt_lang = "ru";
    std::uint64_t seed = 0;
};

// Carves per-topic signature vocabularies and a shared noise pool out of the
// lexicon (so the two language sides stay paired) and samples documents
// token by token: signature with probability signature_frac, noise otherwise.
// tgt_topic_blur redirects that share of tgt-side signature draws into a
// uniformly chosen other topic's block, degrading one corpus half only.
inline corpus::DocumentSet gen_topic_corpus(const mapping::Lexicon& lexicon,
                                            const TopicCorpusParams& params) {
    if (params.topics == 0 || params.docs_per_topic_per_lang == 0 || params.doc_len == 0 ||
        params.vocab_per_topic == 0)
        throw Error(ErrorKind::InvalidArgument, "corpus sizes must be positive");
    if (params.signature_frac < 0.0 || params.signature_frac > 1.0)
        throw Error(ErrorKind::InvalidArgument, "signature fraction must be in [0,1]");
    if (params.tgt_topic_blur < 0.0 || params.tgt_topic_blur > 1.0)
        throw Error(ErrorKind::InvalidArgument, "target topic blur must be in [0,1]");
    if (params.tgt_topic_blur > 0.0 && params.topics < 2)
        throw Error(ErrorKind::InvalidArgument, "target topic blur needs at least two topics");
    const std::size_t needed =
        params.topics * params.vocab_per_topic + params.shared_noise_vocab;
    if (lexicon.pairs.size() < needed)
        throw Error(ErrorKind::InsufficientData,
                    "lexicon too small: need " + std::to_string(needed) + " pairs, have " +
                        std::to_string(lexicon.pairs.size()));

    rng::Prng prng(params.seed, 4);
    const std::size_t noise_base = params.topics * params.vocab_per_topic;

    corpus::DocumentSet set;
    set.docs.reserve(2 * params.topics * params.docs_per_topic_per_lang);
    const bool langs_differ = params.src_lang != params.tgt_lang;
    for (int side = 0; side < (langs_differ ? 2 : 1); ++side) {
        const std::string& lang = side == 0 ? params.src_lang : params.tgt_lang;
        for (std::size_t t = 0; t < params.topics; ++t) {
            for (std::size_t dnum = 0; dnum < params.docs_per_topic_per_lang; ++dnum) {
                corpus::Document doc;
                doc.lang = lang;
                doc.topic = "topic" + std::to_string(t);
                doc.id = lang + "-t" + std::to_string(t) + "-d" + std::to_string(dnum);
                // blur makes the tgt-lang side's topical signal muddier than
                // the src side's, like a corpus half of lower text quality;
                // blur == 0 draws nothing extra so old fixtures are stable
                const bool blur_side = params.tgt_topic_blur > 0.0 && lang == params.tgt_lang;
                doc.tokens.reserve(params.doc_len);
                for (std::size_t pos = 0; pos < params.doc_len; ++pos) {
                    std::size_t pair_idx;
                    if (params.shared_noise_vocab > 0 &&
                        prng.uniform01() >= params.signature_frac) {
                        pair_idx = noise_base + prng.below(params.shared_noise_vocab);
                    } else {
                        std::size_t block = t;
                        if (blur_side && prng.uniform01() < params.tgt_topic_blur) {
                            block = prng.below(params.topics - 1);
                            if (block >= t) ++block;
                        }
                        pair_idx = block * params.vocab_per_topic +
                                   prng.below(params.vocab_per_topic);
                    }
                    const auto& pair = lexicon.pairs[pair_idx];
                    doc.tokens.push_back(side == 0 ? pair.first : pair.second);
                }
                set.docs.push_back(std::move(doc));
            }
        }
    }
    return set;
}

}  // namespace xlingmap::synth
