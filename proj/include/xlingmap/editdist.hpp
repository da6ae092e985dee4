#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "xlingmap/corpus.hpp"
#include "xlingmap/error.hpp"
#include "xlingmap/lexicon.hpp"
#include "xlingmap/text.hpp"

namespace xlingmap::editdist {

// Optimal-string-alignment Damerau-Levenshtein: unit-cost insert, delete,
// substitute and adjacent transposition, no substring edited twice.
inline std::size_t dl_distance_u32(std::u32string_view a, std::u32string_view b) {
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0) return lb;
    if (lb == 0) return la;

    std::vector<std::size_t> prev2(lb + 1), prev1(lb + 1), curr(lb + 1);
    for (std::size_t j = 0; j <= lb; ++j) prev1[j] = j;
    for (std::size_t i = 1; i <= la; ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= lb; ++j) {
            const std::size_t sub = prev1[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            std::size_t best = std::min({prev1[j] + 1, curr[j - 1] + 1, sub});
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
                best = std::min(best, prev2[j - 2] + 1);
            curr[j] = best;
        }
        std::swap(prev2, prev1);
        std::swap(prev1, curr);
    }
    return prev1[lb];
}

inline std::size_t dl_distance(std::string_view a, std::string_view b) {
    return dl_distance_u32(text::utf8_decode(a), text::utf8_decode(b));
}

struct InventoryEntry {
    std::string word; // as substituted into documents
    std::string pos;
    std::uint64_t freq;
};

// Target-language word inventory, indexed by PoS. Distances are computed on
// the lemma part of tokens, so a shared `_POS` suffix never inflates them.
class TargetInventory {
public:
    TargetInventory() = default;

    explicit TargetInventory(std::vector<InventoryEntry> entries) : entries_(std::move(entries)) {
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& e = entries_[i];
            if (e.word.empty()) throw Error(ErrorKind::Validation, "inventory: empty word");
            if (e.freq == 0)
                throw Error(ErrorKind::Validation, "inventory: zero frequency for '" + e.word + "'");
            if (!seen.insert(e.word).second)
                throw Error(ErrorKind::Validation, "inventory: duplicate word '" + e.word + "'");
            lemmas32_.push_back(text::utf8_decode(text::split_lemma_pos(e.word).first));
            by_pos_[e.pos].push_back(i);
        }
    }

    const std::vector<InventoryEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    const std::vector<std::size_t>* indices_for_pos(const std::string& pos) const {
        const auto it = by_pos_.find(pos);
        return it == by_pos_.end() ? nullptr : &it->second;
    }

    const std::u32string& lemma32(std::size_t i) const { return lemmas32_[i]; }

private:
    std::vector<InventoryEntry> entries_;
    std::vector<std::u32string> lemmas32_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_pos_;
};

// TSV "word<TAB>pos<TAB>freq".
inline TargetInventory load_inventory(const std::string& path) {
    auto in = text::open_input(path);
    std::vector<InventoryEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = text::strip_cr(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto fields = text::split_char(stripped, '\t');
        if (fields.size() != 3)
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(line_no) +
                                              ": expected 'word<TAB>pos<TAB>freq'");
        InventoryEntry e;
        e.word = std::string(fields[0]);
        e.pos = std::string(fields[1]);
        e.freq = text::parse_uint(fields[2], path + ":" + std::to_string(line_no));
        entries.push_back(std::move(e));
    }
    return TargetInventory(std::move(entries));
}

inline void save_inventory(const TargetInventory& inv, const std::string& path) {
    auto out = text::open_output(path);
    for (const auto& e : inv.entries()) out << e.word << '\t' << e.pos << '\t' << e.freq << '\n';
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

struct QuasiCandidate {
    std::string word;
    std::size_t distance;
    std::uint64_t freq;
};

// Ranked same-PoS candidates: distance ascending, frequency descending, word
// ascending. An empty list means "untranslatable" (no same-PoS candidates);
// callers keep the original token.
inline std::vector<QuasiCandidate> quasi_translate(std::string_view token,
                                                   const TargetInventory& inventory,
                                                   std::size_t k) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "quasi_translate: k must be positive");
    const auto [lemma, pos] = text::split_lemma_pos(token);
    const auto* indices = inventory.indices_for_pos(std::string(pos));
    if (!indices) return {};

    const std::u32string lemma32 = text::utf8_decode(lemma);
    std::vector<QuasiCandidate> ranked;
    ranked.reserve(indices->size());
    // max-heap of the k smallest distances seen; distance >= length gap, so a
    // gap beyond the current kth-smallest distance can be skipped outright
    std::priority_queue<std::size_t> kth;
    for (const std::size_t i : *indices) {
        const auto& cand = inventory.lemma32(i);
        const std::size_t len_gap =
            cand.size() > lemma32.size() ? cand.size() - lemma32.size() : lemma32.size() - cand.size();
        if (kth.size() == k && len_gap > kth.top()) continue;
        const std::size_t d = dl_distance_u32(lemma32, cand);
        ranked.push_back({inventory.entries()[i].word, d, inventory.entries()[i].freq});
        if (kth.size() < k) {
            kth.push(d);
        } else if (d < kth.top()) {
            kth.pop();
            kth.push(d);
        }
    }
    std::sort(ranked.begin(), ranked.end(), [](const QuasiCandidate& a, const QuasiCandidate& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        if (a.freq != b.freq) return a.freq > b.freq;
        return a.word < b.word;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

namespace detail {

class TranslationCache {
public:
    explicit TranslationCache(const TargetInventory& inventory) : inventory_(inventory) {}

    // rank-1 quasi-translation, or the token itself when untranslatable
    const std::string& translate(const std::string& token) {
        const auto it = cache_.find(token);
        if (it != cache_.end()) return it->second;
        const auto ranked = quasi_translate(token, inventory_, 1);
        return cache_.emplace(token, ranked.empty() ? token : ranked.front().word).first->second;
    }

private:
    const TargetInventory& inventory_;
    std::unordered_map<std::string, std::string> cache_;
};

} // namespace detail

// Replaces every token whose PoS is in replace_pos with its rank-1
// quasi-translation; everything else passes through unchanged.
inline corpus::DocumentSet translate_corpus_edit(const corpus::DocumentSet& docs,
                                                 const TargetInventory& inventory,
                                                 const std::unordered_set<std::string>& replace_pos) {
    detail::TranslationCache cache(inventory);
    corpus::DocumentSet out;
    out.docs.reserve(docs.docs.size());
    for (const auto& doc : docs.docs) {
        corpus::Document translated = doc;
        for (auto& token : translated.tokens) {
            const auto pos = std::string(text::split_lemma_pos(token).second);
            if (replace_pos.count(pos)) token = cache.translate(token);
        }
        out.docs.push_back(std::move(translated));
    }
    return out;
}

// Dictionary lookup first (first-listed target wins), Damerau-Levenshtein for
// the rest.
inline corpus::DocumentSet translate_corpus_hybrid(const corpus::DocumentSet& docs,
                                                   const mapping::Lexicon& lexicon,
                                                   const TargetInventory& inventory,
                                                   const std::unordered_set<std::string>& replace_pos) {
    std::unordered_map<std::string, const std::string*> dict;
    dict.reserve(lexicon.pairs.size());
    for (const auto& [src, tgt] : lexicon.pairs) dict.emplace(src, &tgt);

    detail::TranslationCache cache(inventory);
    corpus::DocumentSet out;
    out.docs.reserve(docs.docs.size());
    for (const auto& doc : docs.docs) {
        corpus::Document translated = doc;
        for (auto& token : translated.tokens) {
            const auto it = dict.find(token);
            if (it != dict.end()) {
                token = *it->second;
                continue;
            }
            const auto pos = std::string(text::split_lemma_pos(token).second);
            if (replace_pos.count(pos)) token = cache.translate(token);
        }
        out.docs.push_back(std::move(translated));
    }
    return out;
}

} // namespace xlingmap::editdist
