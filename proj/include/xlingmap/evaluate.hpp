#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "xlingmap/corpus.hpp"
#include "xlingmap/error.hpp"
#include "xlingmap/text.hpp"

namespace xlingmap::eval {

struct TopicScore {
    std::string topic;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
};

struct ClusterTopicReport {
    std::vector<std::string> topics;               // sorted ascending
    std::vector<std::vector<std::size_t>> counts;  // k x |topics| contingency
    std::vector<std::size_t> mapping;              // cluster -> topic index
    std::vector<TopicScore> per_topic;
    double error_rate = 0.0;
    double macro_f1 = 0.0;
    double micro_f1 = 0.0;
    std::size_t total_docs = 0;
};

namespace detail {

// Best one-to-one cluster->topic assignment (maximum matched documents) when
// k == |topics|, found by subset DP over topics. Ties between equally good
// assignments are broken deterministically, preferring earlier topics (by
// ascending name) for earlier clusters.
inline std::vector<std::size_t> assign_one_to_one(
    const std::vector<std::vector<std::size_t>>& counts) {
    const std::size_t k = counts.size();
    const std::uint32_t full = (1u << k) - 1u;
    std::vector<std::size_t> best(full + 1, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const std::size_t cluster = static_cast<std::size_t>(std::popcount(mask)) - 1;
        std::size_t value = 0;
        for (std::size_t t = 0; t < k; ++t) {
            if (!(mask & (1u << t))) continue;
            value = std::max(value, best[mask & ~(1u << t)] + counts[cluster][t]);
        }
        best[mask] = value;
    }
    // walk backwards, giving each cluster the smallest topic that still
    // achieves the optimum
    std::vector<std::size_t> mapping(k, 0);
    std::uint32_t mask = full;
    for (std::size_t cluster = k; cluster-- > 0;) {
        for (std::size_t t = 0; t < k; ++t) {
            if (!(mask & (1u << t))) continue;
            if (best[mask] == best[mask & ~(1u << t)] + counts[cluster][t]) {
                mapping[cluster] = t;
                mask &= ~(1u << t);
                break;
            }
        }
    }
    // the backward walk favours low topics for high clusters; where swapping
    // two clusters' topics keeps the optimum, prefer the smaller topic on the
    // smaller cluster id
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                if (mapping[b] >= mapping[a]) continue;
                const std::size_t keep = counts[a][mapping[a]] + counts[b][mapping[b]];
                const std::size_t swapped = counts[a][mapping[b]] + counts[b][mapping[a]];
                if (swapped >= keep) {
                    std::swap(mapping[a], mapping[b]);
                    changed = true;
                }
            }
        }
    }
    return mapping;
}

}  // namespace detail

// Per-topic precision/recall/f1 plus their unweighted mean, from a
// contingency table and a cluster->topic mapping. f1 is computed as
// 2*tp/(predicted+gold) -- the harmonic mean of precision and recall in one
// rounding -- and is 0 when both counts are 0.
inline std::pair<std::vector<TopicScore>, double> prf_from_counts(
    const std::vector<std::vector<std::size_t>>& counts,
    const std::vector<std::size_t>& mapping, const std::vector<std::string>& topics) {
    const std::size_t k = counts.size();
    const std::size_t t = topics.size();
    if (mapping.size() != k)
        throw Error(ErrorKind::InvalidArgument, "mapping size does not match cluster count");
    for (const auto m : mapping)
        if (m >= t) throw Error(ErrorKind::InvalidArgument, "mapping refers to unknown topic");

    std::vector<std::size_t> tp(t, 0), predicted(t, 0), gold(t, 0);
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c].size() != t)
            throw Error(ErrorKind::InvalidArgument, "ragged contingency table");
        for (std::size_t j = 0; j < t; ++j) {
            predicted[mapping[c]] += counts[c][j];
            gold[j] += counts[c][j];
        }
        tp[mapping[c]] += counts[c][mapping[c]];
    }

    std::vector<TopicScore> scores;
    double f1_sum = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
        TopicScore score;
        score.topic = topics[j];
        score.support = gold[j];
        score.precision = predicted[j] == 0
                              ? 0.0
                              : static_cast<double>(tp[j]) / static_cast<double>(predicted[j]);
        score.recall =
            gold[j] == 0 ? 0.0 : static_cast<double>(tp[j]) / static_cast<double>(gold[j]);
        score.f1 = predicted[j] + gold[j] == 0
                       ? 0.0
                       : 2.0 * static_cast<double>(tp[j]) /
                             static_cast<double>(predicted[j] + gold[j]);
        f1_sum += score.f1;
        scores.push_back(score);
    }
    return {std::move(scores), f1_sum / static_cast<double>(t)};
}

// Builds the k x |topics| contingency table of a clustering against gold
// topic labels and maps every cluster to a topic: an optimal one-to-one
// assignment when k equals the number of topics, otherwise each cluster takes
// its plurality topic (ties broken by topic name ascending).
inline ClusterTopicReport map_clusters_to_topics(
    const std::vector<std::uint32_t>& assignments,
    const std::vector<std::string>& gold_topics, std::size_t k) {
    if (gold_topics.size() != assignments.size())
        throw Error(ErrorKind::Validation, "label count does not match assignment count");
    if (assignments.empty())
        throw Error(ErrorKind::InsufficientData, "no labeled documents to score");
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
    if (k > 31) throw Error(ErrorKind::InvalidArgument, "k too large for topic scoring");

    ClusterTopicReport report;
    std::map<std::string, std::size_t> topic_index;
    for (const auto& topic : gold_topics) topic_index.emplace(topic, 0);
    for (auto& [name, idx] : topic_index) {
        idx = report.topics.size();
        report.topics.push_back(name);
    }

    const std::size_t t = report.topics.size();
    report.counts.assign(k, std::vector<std::size_t>(t, 0));
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] >= k)
            throw Error(ErrorKind::Validation, "cluster id out of range");
        ++report.counts[assignments[i]][topic_index.at(gold_topics[i])];
    }
    report.total_docs = assignments.size();

    if (k == t) {
        report.mapping = detail::assign_one_to_one(report.counts);
    } else {
        report.mapping.assign(k, 0);
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t best = 0;
            for (std::size_t j = 1; j < t; ++j)
                if (report.counts[c][j] > report.counts[c][best]) best = j;
            report.mapping[c] = best;
        }
    }

    std::size_t matched = 0;
    for (std::size_t c = 0; c < k; ++c) matched += report.counts[c][report.mapping[c]];
    report.error_rate = static_cast<double>(report.total_docs - matched) /
                        static_cast<double>(report.total_docs);
    report.micro_f1 =
        static_cast<double>(matched) / static_cast<double>(report.total_docs);

    auto [scores, macro] = prf_from_counts(report.counts, report.mapping, report.topics);
    report.per_topic = std::move(scores);
    report.macro_f1 = macro;
    return report;
}

inline ClusterTopicReport map_clusters_to_topics(const corpus::DocumentSet& docs,
                                                 const std::vector<std::uint32_t>& assignments,
                                                 std::size_t k) {
    std::vector<std::string> gold;
    gold.reserve(docs.docs.size());
    for (const auto& doc : docs.docs) {
        if (!doc.topic)
            throw Error(ErrorKind::Validation,
                        "document '" + doc.id + "' has no topic label");
        gold.push_back(*doc.topic);
    }
    return map_clusters_to_topics(assignments, gold, k);
}

inline nlohmann::ordered_json report_to_json(const ClusterTopicReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = "xlingmap/1";
    j["topics"] = report.topics;
    j["contingency"] = report.counts;
    nlohmann::ordered_json mapping = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < report.mapping.size(); ++c)
        mapping[std::to_string(c)] = report.topics[report.mapping[c]];
    j["cluster_to_topic"] = mapping;
    j["error_rate"] = report.error_rate;
    nlohmann::ordered_json per_topic = nlohmann::ordered_json::array();
    for (const auto& score : report.per_topic) {
        nlohmann::ordered_json row;
        row["topic"] = score.topic;
        row["precision"] = score.precision;
        row["recall"] = score.recall;
        row["f1"] = score.f1;
        row["support"] = score.support;
        per_topic.push_back(row);
    }
    j["per_topic"] = per_topic;
    j["macro_f1"] = report.macro_f1;
    j["micro_f1"] = report.micro_f1;
    j["total_docs"] = report.total_docs;
    return j;
}

inline void print_report(std::ostream& os, const ClusterTopicReport& report) {
    os << "documents: " << report.total_docs << "\n";
    os << "error rate: " << text::format_double(report.error_rate) << "\n";
    os << "macro f1: " << text::format_double(report.macro_f1) << "\n";
    os << "micro f1: " << text::format_double(report.micro_f1) << "\n";
    os << "\ncluster -> topic (contingency rows)\n";
    for (std::size_t c = 0; c < report.counts.size(); ++c) {
        os << "  #" << c << " -> " << report.topics[report.mapping[c]] << " [";
        for (std::size_t j = 0; j < report.counts[c].size(); ++j) {
            if (j) os << ' ';
            os << report.counts[c][j];
        }
        os << "]\n";
    }
    os << "\ntopic            precision  recall     f1         support\n";
    for (const auto& score : report.per_topic) {
        std::ostringstream row;
        row << std::left << std::setw(17) << score.topic << std::fixed
            << std::setprecision(4) << std::setw(11) << score.precision << std::setw(11)
            << score.recall << std::setw(11) << score.f1 << score.support;
        os << row.str() << "\n";
    }
}

}  // namespace xlingmap::eval
