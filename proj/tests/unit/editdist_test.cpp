#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "xlingmap/editdist.hpp"
#include "xlingmap/prng.hpp"
#include "xlingmap/text.hpp"

using namespace xlingmap;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    const fs::path dir = fs::path(XLM_TEST_TMP) / "editdist";
    fs::create_directories(dir);
    return dir;
}

// every string over `alphabet` with length <= max_len
std::vector<std::string> enumerate_strings(const std::string& alphabet, std::size_t max_len) {
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char c : alphabet) out.push_back(out[i] + c);
        begin = end;
    }
    return out;
}

std::string random_cyrillic(rng::Prng& prng, std::size_t max_len) {
    static const std::vector<std::string> letters{"а", "б", "в", "г", "д", "е", "ж", "з",
                                                  "и", "к", "л", "м", "н", "о", "п", "р"};
    std::string s;
    const std::size_t len = prng.below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) s += letters[prng.below(letters.size())];
    return s;
}

}  // namespace

TEST_CASE("distance basics, including the no-double-edit convention") {
    REQUIRE(editdist::dl_distance("", "") == 0);
    REQUIRE(editdist::dl_distance("kitten", "kitten") == 0);
    REQUIRE(editdist::dl_distance("ab", "ba") == 1);     // one transposition
    REQUIRE(editdist::dl_distance("kitten", "sitting") == 3);
    REQUIRE(editdist::dl_distance("", "abc") == 3);
    REQUIRE(editdist::dl_distance("abc", "") == 3);
    // optimal string alignment: "ca" -> "abc" costs 3, not 2, because the
    // transposed pair may not be edited again
    REQUIRE(editdist::dl_distance("ca", "abc") == 3);
    // multibyte letters count as single symbols
    REQUIRE(editdist::dl_distance("мова", "мовы") == 1);
    REQUIRE(editdist::dl_distance("мвоа", "мова") == 1);
}

TEST_CASE("exhaustive agreement with the recursive definition up to length 5") {
    const auto all = enumerate_strings("abc", 5);
    REQUIRE(all.size() == 364);
    for (const auto& a : all) {
        const auto a32 = text::utf8_decode(a);
        for (const auto& b : all) {
            const auto b32 = text::utf8_decode(b);
            const std::size_t got = editdist::dl_distance_u32(a32, b32);
            REQUIRE(got == oracles::osa_recursive(a32, b32));
            REQUIRE(got == editdist::dl_distance_u32(b32, a32));
            const std::size_t la = a32.size(), lb = b32.size();
            REQUIRE(got >= (la > lb ? la - lb : lb - la));
            REQUIRE(got <= std::max(la, lb));
            if (a == b) REQUIRE(got == 0);
        }
    }
}

TEST_CASE("random Cyrillic pairs match the recursive definition") {
    rng::Prng prng(90);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_cyrillic(prng, 8);
        const auto b = random_cyrillic(prng, 8);
        const auto a32 = text::utf8_decode(a);
        const auto b32 = text::utf8_decode(b);
        REQUIRE(editdist::dl_distance(a, b) == oracles::osa_recursive(a32, b32));
    }
}

TEST_CASE("quasi-translation ranks by distance, then frequency, then word") {
    editdist::TargetInventory inv({
        {"кот_S", "S", 50},
        {"код_S", "S", 900},
        {"кола_S", "S", 900},
        {"рота_S", "S", 10},
        {"бежать_V", "V", 5000},
    });
    // query "кол_S": кот, код and кола all sit at distance 1; код and кола tie
    // on frequency so the word decides, and кот loses on frequency
    const auto ranked = editdist::quasi_translate("кол_S", inv, 4);
    REQUIRE(ranked.size() == 4);
    REQUIRE(ranked[0].word == "код_S");
    REQUIRE(ranked[0].distance == 1);
    REQUIRE(ranked[1].word == "кола_S");
    REQUIRE(ranked[1].distance == 1);
    REQUIRE(ranked[2].word == "кот_S");
    REQUIRE(ranked[2].distance == 1);
    REQUIRE(ranked[3].word == "рота_S");
    REQUIRE(ranked[3].distance == 3);

    // a word present verbatim wins at distance 0
    const auto self = editdist::quasi_translate("код_S", inv, 1);
    REQUIRE(self.size() == 1);
    REQUIRE(self[0].word == "код_S");
    REQUIRE(self[0].distance == 0);

    // no same-PoS candidates -> untranslatable
    REQUIRE(editdist::quasi_translate("быстро_ADV", inv, 3).empty());
    REQUIRE_THROWS_AS(editdist::quasi_translate("кол_S", inv, 0), Error);
}

TEST_CASE("quasi-translation equals a full-scan sort of the inventory") {
    rng::Prng prng(91);
    std::vector<editdist::InventoryEntry> entries;
    for (int i = 0; i < 200; ++i) {
        std::string lemma;
        do {
            lemma = random_cyrillic(prng, 7);
        } while (lemma.empty());
        const std::string word = lemma + "_S";
        if (std::any_of(entries.begin(), entries.end(),
                        [&](const auto& e) { return e.word == word; }))
            continue;
        entries.push_back({word, "S", 1 + prng.below(1000)});
    }
    const editdist::TargetInventory inv(entries);

    for (int q = 0; q < 40; ++q) {
        std::string lemma;
        do {
            lemma = random_cyrillic(prng, 6);
        } while (lemma.empty());
        const auto got = editdist::quasi_translate(lemma + "_S", inv, 5);

        std::vector<editdist::QuasiCandidate> expect;
        for (const auto& e : entries) {
            const auto cand_lemma = std::string(text::split_lemma_pos(e.word).first);
            expect.push_back({e.word, editdist::dl_distance(lemma, cand_lemma), e.freq});
        }
        std::sort(expect.begin(), expect.end(), [](const auto& a, const auto& b) {
            if (a.distance != b.distance) return a.distance < b.distance;
            if (a.freq != b.freq) return a.freq > b.freq;
            return a.word < b.word;
        });
        expect.resize(5);
        REQUIRE(got.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) {
            REQUIRE(got[i].word == expect[i].word);
            REQUIRE(got[i].distance == expect[i].distance);
        }
    }
}

TEST_CASE("inventory validation and TSV round-trip") {
    REQUIRE_THROWS_AS(editdist::TargetInventory({{"a_S", "S", 1}, {"a_S", "S", 2}}), Error);
    REQUIRE_THROWS_AS(editdist::TargetInventory({{"a_S", "S", 0}}), Error);
    REQUIRE_THROWS_AS(editdist::TargetInventory({{"", "S", 1}}), Error);

    const editdist::TargetInventory inv({{"кот_S", "S", 7}, {"идти_V", "V", 3}});
    const fs::path p = tmp_dir() / "inv.tsv";
    editdist::save_inventory(inv, p.string());
    const auto back = editdist::load_inventory(p.string());
    REQUIRE(back.entries().size() == 2);
    REQUIRE(back.entries()[0].word == "кот_S");
    REQUIRE(back.entries()[0].freq == 7);
    REQUIRE(back.entries()[1].pos == "V");

    const fs::path bad = tmp_dir() / "bad_inv.tsv";
    {
        std::ofstream out(bad);
        out << "word_S\tS\tnot-a-number\n";
    }
    REQUIRE_THROWS_AS(editdist::load_inventory(bad.string()), Error);
}

TEST_CASE("corpus translation: PoS gate, identity on verbatim hits") {
    corpus::DocumentSet docs;
    corpus::Document d;
    d.id = "d1";
    d.lang = "uk";
    d.tokens = {"кот_S", "кит_S", "быстро_ADV"};
    docs.docs.push_back(d);

    const editdist::TargetInventory inv({{"кот_S", "S", 10}, {"кит_S", "S", 5}});

    // empty replace set: nothing changes
    const auto untouched = editdist::translate_corpus_edit(docs, inv, {});
    REQUIRE(untouched.docs[0].tokens == d.tokens);

    // tokens already in the inventory map to themselves; ADV passes through
    // because no ADV candidates exist
    const auto translated = editdist::translate_corpus_edit(docs, inv, {"S", "ADV"});
    REQUIRE(translated.docs[0].tokens == d.tokens);
    REQUIRE(translated.docs[0].id == "d1");
}

TEST_CASE("single-typo cognates are restored almost always") {
    rng::Prng prng(92);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    std::vector<editdist::InventoryEntry> entries;
    while (entries.size() < 80) {
        std::string lemma;
        const std::size_t len = 6 + prng.below(4);
        for (std::size_t i = 0; i < len; ++i) lemma += alphabet[prng.below(alphabet.size())];
        const std::string word = lemma + "_S";
        if (std::any_of(entries.begin(), entries.end(),
                        [&](const auto& e) { return e.word == word; }))
            continue;
        entries.push_back({word, "S", 1 + prng.below(100)});
    }
    const editdist::TargetInventory inv(entries);

    corpus::DocumentSet docs;
    corpus::Document d;
    d.id = "noisy";
    d.lang = "uk";
    for (const auto& e : entries) {
        std::string lemma = std::string(text::split_lemma_pos(e.word).first);
        switch (prng.below(4)) {
            case 0:  // substitution
                lemma[prng.below(lemma.size())] = alphabet[prng.below(alphabet.size())];
                break;
            case 1:  // deletion
                lemma.erase(prng.below(lemma.size()), 1);
                break;
            case 2:  // insertion
                lemma.insert(prng.below(lemma.size() + 1), 1, alphabet[prng.below(alphabet.size())]);
                break;
            default: {  // adjacent transposition
                const std::size_t i = prng.below(lemma.size() - 1);
                std::swap(lemma[i], lemma[i + 1]);
                break;
            }
        }
        d.tokens.push_back(lemma + "_S");
    }
    docs.docs.push_back(d);

    const auto restored = editdist::translate_corpus_edit(docs, inv, {"S"});
    std::size_t hits = 0;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (restored.docs[0].tokens[i] == entries[i].word) ++hits;
    REQUIRE(hits >= 76);  // >= 95% of 80
}

TEST_CASE("hybrid translation: dictionary wins, edit distance mops up") {
    const editdist::TargetInventory inv({{"kot_S", "S", 10}, {"kit_S", "S", 8}, {"dom_S", "S", 6}});
    mapping::Lexicon lex;
    lex.pairs = {{"kit_S", "dom_S"},   // exact inventory word, overridden by the dictionary
                 {"kit_S", "kot_S"},   // second listing for the same source is ignored
                 {"xyz_Q", "dom_S"}};  // dictionary applies even off the PoS gate

    corpus::DocumentSet docs;
    corpus::Document d;
    d.id = "d";
    d.lang = "uk";
    d.tokens = {"kit_S", "kyt_S", "xyz_Q", "abc_Q"};
    docs.docs.push_back(d);

    const auto out = editdist::translate_corpus_hybrid(docs, lex, inv, {"S"});
    // kit_S: dictionary overrides its own distance-0 hit; kyt_S: kot/kit tie at
    // distance 1 and kot wins on frequency; xyz_Q: dictionary applies despite
    // the PoS gate; abc_Q: untouched
    REQUIRE(out.docs[0].tokens ==
            std::vector<std::string>{"dom_S", "kot_S", "dom_S", "abc_Q"});
}

TEST_CASE("hybrid with an empty dictionary degenerates to pure edit distance") {
    rng::Prng prng(93);
    std::vector<editdist::InventoryEntry> entries;
    for (int i = 0; i < 50; ++i) {
        std::string lemma;
        do {
            lemma = random_cyrillic(prng, 6);
        } while (lemma.size() < 2);
        const std::string word = lemma + "_S";
        if (std::any_of(entries.begin(), entries.end(),
                        [&](const auto& e) { return e.word == word; }))
            continue;
        entries.push_back({word, "S", 1 + prng.below(50)});
    }
    const editdist::TargetInventory inv(entries);

    corpus::DocumentSet docs;
    for (int n = 0; n < 5; ++n) {
        corpus::Document d;
        d.id = "d" + std::to_string(n);
        d.lang = "uk";
        for (int i = 0; i < 20; ++i) d.tokens.push_back(random_cyrillic(prng, 6) + "_S");
        docs.docs.push_back(d);
    }

    const auto via_edit = editdist::translate_corpus_edit(docs, inv, {"S"});
    const auto via_hybrid = editdist::translate_corpus_hybrid(docs, mapping::Lexicon{}, inv, {"S"});
    for (std::size_t i = 0; i < docs.docs.size(); ++i)
        REQUIRE(via_edit.docs[i].tokens == via_hybrid.docs[i].tokens);
}

TEST_CASE("hybrid equals a hand-composed dictionary-then-edit pipeline") {
    rng::Prng prng(94);
    std::vector<editdist::InventoryEntry> entries;
    for (int i = 0; i < 60; ++i) {
        std::string lemma;
        do {
            lemma = random_cyrillic(prng, 6);
        } while (lemma.size() < 2);
        const std::string word = lemma + "_S";
        if (std::any_of(entries.begin(), entries.end(),
                        [&](const auto& e) { return e.word == word; }))
            continue;
        entries.push_back({word, "S", 1 + prng.below(50)});
    }
    const editdist::TargetInventory inv(entries);

    corpus::DocumentSet docs;
    corpus::Document d;
    d.id = "d";
    d.lang = "uk";
    for (int i = 0; i < 60; ++i) d.tokens.push_back(random_cyrillic(prng, 6) + "_S");
    docs.docs.push_back(d);

    // dictionary covering about half of the distinct tokens
    mapping::Lexicon lex;
    for (std::size_t i = 0; i < d.tokens.size(); i += 2)
        lex.pairs.emplace_back(d.tokens[i], entries[i % entries.size()].word);

    std::unordered_map<std::string, std::string> dict;
    for (const auto& [s, t] : lex.pairs) dict.emplace(s, t);

    const auto got = editdist::translate_corpus_hybrid(docs, lex, inv, {"S"});
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
        const auto& token = d.tokens[i];
        std::string expect;
        if (const auto it = dict.find(token); it != dict.end()) {
            expect = it->second;
        } else {
            const auto ranked = editdist::quasi_translate(token, inv, 1);
            expect = ranked.empty() ? token : ranked.front().word;
        }
        REQUIRE(got.docs[0].tokens[i] == expect);
    }
}
