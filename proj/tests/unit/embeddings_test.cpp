#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "xlingmap/embeddings.hpp"
#include "xlingmap/prng.hpp"

using namespace xlingmap;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    const fs::path dir = fs::path(XLM_TEST_TMP) / "embeddings";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = tmp_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

embeddings::EmbeddingModel random_model(std::size_t vocab, std::size_t dim, std::uint64_t seed,
                                        const std::string& prefix = "w") {
    rng::Prng prng(seed);
    std::vector<std::string> words(vocab);
    std::vector<double> flat(vocab * dim);
    for (std::size_t i = 0; i < vocab; ++i) words[i] = prefix + std::to_string(i);
    for (auto& v : flat) v = prng.normal();
    return embeddings::EmbeddingModel(std::move(words), std::move(flat), dim);
}

}  // namespace

TEST_CASE("load_model parses the word2vec text header and rows") {
    const auto p = write_file("tiny.vec", "2 3\na 1 0 0\nb 0 1 0\n");
    const auto model = embeddings::load_model(p.string());
    REQUIRE(model.size() == 2);
    REQUIRE(model.dim() == 3);
    REQUIRE(model.contains("a"));
    REQUIRE(model.contains("b"));
    const auto va = model.vector("a");
    REQUIRE(va[0] == 1.0);
    REQUIRE(va[1] == 0.0);
    REQUIRE(va[2] == 0.0);
}

TEST_CASE("load_model enforces expected_dim") {
    const auto p = write_file("tiny2.vec", "2 3\na 1 0 0\nb 0 1 0\n");
    try {
        embeddings::load_model(p.string(), 4);
        FAIL("expected throw");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::Dimension);
        REQUIRE(std::string(e.what()).find("dim") != std::string::npos);
    }
}

TEST_CASE("load_model tolerates CRLF and a trailing newline, nothing else") {
    const auto crlf = write_file("crlf.vec", "2 2\r\na 1 0\r\nb 0 1\r\n");
    REQUIRE(embeddings::load_model(crlf.string()).size() == 2);

    const auto no_trailing = write_file("nonl.vec", "1 2\na 1 0");
    REQUIRE(embeddings::load_model(no_trailing.string()).size() == 1);

    const auto short_row = write_file("short.vec", "1 3\na 1 0\n");
    REQUIRE_THROWS_AS(embeddings::load_model(short_row.string()), Error);

    const auto missing_row = write_file("missing.vec", "2 2\na 1 0\n");
    REQUIRE_THROWS_AS(embeddings::load_model(missing_row.string()), Error);

    const auto extra_row = write_file("extra.vec", "1 2\na 1 0\nb 0 1\n");
    REQUIRE_THROWS_AS(embeddings::load_model(extra_row.string()), Error);

    const auto bad_header = write_file("badhdr.vec", "two 2\na 1 0\n");
    REQUIRE_THROWS_AS(embeddings::load_model(bad_header.string()), Error);

    const auto dup = write_file("dup.vec", "2 2\na 1 0\na 0 1\n");
    REQUIRE_THROWS_AS(embeddings::load_model(dup.string()), Error);

    const auto nonfinite = write_file("nan.vec", "1 2\na nan 0\n");
    REQUIRE_THROWS_AS(embeddings::load_model(nonfinite.string()), Error);
}

TEST_CASE("vector lookups and the OOV error") {
    const auto p = write_file("ab.vec", "1 2\na 1 0\n");
    const auto model = embeddings::load_model(p.string());
    const auto v = model.vector("a");
    REQUIRE(v[0] == 1.0);
    try {
        model.vector("z");
        FAIL("expected throw");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::Oov);
    }
}

TEST_CASE("large model save/load round-trips bit-exactly") {
    const auto model = random_model(50000, 300, 404);
    const auto p = (tmp_dir() / "big.vec").string();
    embeddings::save_model(model, p);
    const auto back = embeddings::load_model(p, 300);
    REQUIRE(back.size() == model.size());
    bool identical = true;
    for (std::size_t i = 0; i < model.size() && identical; ++i) {
        identical = back.words()[i] == model.words()[i];
        const auto a = model.row(i), b = back.row(i);
        for (std::size_t c = 0; c < 300 && identical; ++c) identical = a[c] == b[c];
    }
    REQUIRE(identical);
    // spot check one named row
    const auto w42 = back.vector("w42");
    const auto orig = model.vector("w42");
    for (std::size_t c = 0; c < 300; ++c) REQUIRE(w42[c] == orig[c]);
    fs::remove(p);
}

TEST_CASE("nearest: self-similarity, exclusion, truncation") {
    const auto model = random_model(50, 10, 7);
    const auto q = model.vector("w13");

    const auto top = embeddings::nearest(model, q, 1);
    REQUIRE(top.size() == 1);
    REQUIRE(top[0].word == "w13");
    REQUIRE(top[0].similarity == Catch::Approx(1.0).margin(1e-9));

    const auto excluded = embeddings::nearest(model, q, 1, {"w13"});
    REQUIRE(excluded[0].word != "w13");
    const auto top2 = embeddings::nearest(model, q, 2);
    REQUIRE(excluded[0].word == top2[1].word);

    const auto full = embeddings::nearest(model, q, 1000);
    REQUIRE(full.size() == 50);
    const auto full_excl = embeddings::nearest(model, q, 1000, {"w13"});
    REQUIRE(full_excl.size() == 49);
}

TEST_CASE("nearest is scale-invariant in the query") {
    const auto model = random_model(80, 12, 8);
    const auto q = model.vector("w5");
    std::vector<double> scaled(q.begin(), q.end());
    for (auto& v : scaled) v *= 7.25;
    const auto a = embeddings::nearest(model, q, 10);
    const auto b = embeddings::nearest(model, scaled, 10);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].word == b[i].word);
}

TEST_CASE("nearest matches the brute-force oracle on random queries") {
    const auto model = random_model(1000, 20, 909);
    rng::Prng prng(910);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> q(20);
        for (auto& v : q) v = prng.normal();
        const auto fast = embeddings::nearest(model, q, 5);
        const auto slow = oracles::brute_force_neighbors(model, q, 5);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            REQUIRE(fast[i].word == slow[i].word);
            REQUIRE(fast[i].similarity == Catch::Approx(slow[i].similarity).margin(1e-12));
        }
    }
}

TEST_CASE("every vocabulary word is its own top-1") {
    const auto model = random_model(200, 6, 11);
    for (const auto& word : model.words()) {
        const auto top = embeddings::nearest(model, model.vector(word), 1);
        REQUIRE(top[0].word == word);
        REQUIRE(top[0].similarity == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("nearest input validation") {
    const auto model = random_model(10, 4, 21);
    const std::vector<double> zero(4, 0.0);
    const std::vector<double> wrong(3, 1.0);
    const std::vector<double> ok(4, 1.0);
    REQUIRE_THROWS_AS(embeddings::nearest(model, zero, 3), Error);
    REQUIRE_THROWS_AS(embeddings::nearest(model, wrong, 3), Error);
    REQUIRE_THROWS_AS(embeddings::nearest(model, ok, 0), Error);
}

TEST_CASE("model construction rejects degenerate inputs") {
    REQUIRE_THROWS_AS(embeddings::EmbeddingModel({"a"}, {0.0, 0.0}, 2), Error);  // zero vector
    REQUIRE_THROWS_AS(embeddings::EmbeddingModel({"a", "a"}, {1.0, 0.0, 0.0, 1.0}, 2), Error);
    REQUIRE_THROWS_AS(embeddings::EmbeddingModel({""}, {1.0, 0.0}, 2), Error);
    REQUIRE_THROWS_AS(embeddings::EmbeddingModel({"a"}, {1.0}, 0), Error);
}

TEST_CASE("normalize flag rescales rows to unit length without changing rankings") {
    const auto raw = random_model(60, 8, 31);
    const auto p = (tmp_dir() / "norm.vec").string();
    embeddings::save_model(raw, p);
    const auto unit = embeddings::load_model(p, 8, /*normalize=*/true);
    for (std::size_t i = 0; i < unit.size(); ++i) {
        double n = 0.0;
        for (const double v : unit.row(i)) n += v * v;
        REQUIRE(std::sqrt(n) == Catch::Approx(1.0).margin(1e-12));
    }
    const auto q = raw.vector("w7");
    const auto a = embeddings::nearest(raw, q, 10);
    const auto b = embeddings::nearest(unit, q, 10);
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].word == b[i].word);
}
