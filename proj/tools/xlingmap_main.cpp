// Command-line front end: generate synthetic bilingual fixtures, learn a
// source->target embedding transform from a lexicon, and run the clustering
// pipelines (bag-of-words baselines, quasi-translation, matrix translation,
// semantic fingerprints) against a labeled corpus.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "xlingmap/xlingmap.hpp"

namespace fs = std::filesystem;
using namespace xlingmap;

namespace {

std::vector<std::size_t> parse_ks(const std::string& csv) {
    std::vector<std::size_t> ks;
    for (const auto part : text::split_char(csv, ','))
        ks.push_back(static_cast<std::size_t>(text::parse_uint(part, "--ks")));
    if (ks.empty()) throw Error(ErrorKind::InvalidArgument, "--ks must list at least one rank");
    return ks;
}

std::unordered_set<std::string> parse_pos_set(const std::string& csv) {
    std::unordered_set<std::string> pos;
    for (const auto part : text::split_char(csv, ','))
        if (!part.empty()) pos.emplace(part);
    return pos;
}

// "start:stop:step" -> ascending lambda grid, endpoints inclusive
std::vector<double> parse_sweep(const std::string& grid) {
    const auto parts = text::split_char(grid, ':');
    if (parts.size() != 3)
        throw Error(ErrorKind::InvalidArgument, "--lambda-sweep expects start:stop:step");
    const double start = text::parse_double(parts[0], "--lambda-sweep start");
    const double stop = text::parse_double(parts[1], "--lambda-sweep stop");
    const double step = text::parse_double(parts[2], "--lambda-sweep step");
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "sweep step must be positive");
    if (stop < start) throw Error(ErrorKind::InvalidArgument, "sweep stop must be >= start");
    if (start < 0.0) throw Error(ErrorKind::InvalidArgument, "lambda must be non-negative");
    const auto n = static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
    std::vector<double> lambdas(n);
    for (std::size_t i = 0; i < n; ++i) lambdas[i] = start + static_cast<double>(i) * step;
    return lambdas;
}

// Runs `translate` on the source-language documents only and splices the
// results back, leaving every other document untouched.
template <typename Fn>
corpus::DocumentSet translate_source_docs(const corpus::DocumentSet& docs,
                                          const std::string& src_lang, Fn&& translate) {
    corpus::DocumentSet subset;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < docs.docs.size(); ++i) {
        if (docs.docs[i].lang != src_lang) continue;
        where.push_back(i);
        subset.docs.push_back(docs.docs[i]);
    }
    corpus::DocumentSet translated = translate(subset);
    corpus::DocumentSet out = docs;
    for (std::size_t j = 0; j < where.size(); ++j)
        out.docs[where[j]] = std::move(translated.docs[j]);
    return out;
}

// Replaces every source-language token that the source model knows with the
// target word nearest to its transformed vector; out-of-vocabulary tokens
// stay verbatim. Memoized per distinct token.
corpus::DocumentSet translate_corpus_matrix(const corpus::DocumentSet& docs,
                                            const embeddings::EmbeddingModel& src_model,
                                            const embeddings::EmbeddingModel& tgt_model,
                                            const mapping::TransformMatrix& t,
                                            const std::string& src_lang) {
    std::unordered_map<std::string, std::string> cache;
    corpus::DocumentSet out = docs;
    for (auto& doc : out.docs) {
        if (doc.lang != src_lang) continue;
        for (auto& token : doc.tokens) {
            auto it = cache.find(token);
            if (it == cache.end()) {
                std::string replacement = token;
                if (src_model.contains(token)) {
                    const auto neighbors =
                        mapping::translate_word(t, src_model, tgt_model, token, 1);
                    if (!neighbors.empty()) replacement = neighbors[0].word;
                }
                it = cache.emplace(token, std::move(replacement)).first;
            }
            token = it->second;
        }
    }
    return out;
}

editdist::TargetInventory build_inventory(const corpus::DocumentSet& docs,
                                          const std::string& tgt_lang) {
    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& doc : docs.docs) {
        if (doc.lang != tgt_lang) continue;
        for (const auto& token : doc.tokens) ++freq[token];
    }
    std::vector<editdist::InventoryEntry> entries;
    entries.reserve(freq.size());
    for (const auto& [word, count] : freq)
        entries.push_back({word, std::string(text::split_lemma_pos(word).second), count});
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.freq != b.freq) return a.freq > b.freq;
        return a.word < b.word;
    });
    return editdist::TargetInventory(std::move(entries));
}

// ---------------------------------------------------------------- synth ----

struct SynthOpts {
    std::string out_dir;
    std::uint64_t seed = 0;
    std::size_t vocab_size = 600;
    std::size_t dim = 20;
    double noise_sigma = 0.05;
    std::size_t topics = 3;
    std::size_t docs_per_topic = 100;
    std::size_t doc_len = 200;
    std::size_t vocab_per_topic = 150;
    std::size_t shared_noise = 50;
    double signature_frac = 0.8;
    double tgt_topic_blur = 0.0;
    std::string src_lang = "uk";
    std::string tgt_lang = "ru";
};

int run_synth(const SynthOpts& opts) {
    fs::create_directories(opts.out_dir);
    const auto fixture = synth::gen_bilingual_embeddings(
        opts.vocab_size, opts.dim, opts.noise_sigma, opts.seed, opts.src_lang, opts.tgt_lang);

    synth::TopicCorpusParams params;
    params.topics = opts.topics;
    params.docs_per_topic_per_lang = opts.docs_per_topic;
    params.doc_len = opts.doc_len;
    params.vocab_per_topic = opts.vocab_per_topic;
    params.shared_noise_vocab = opts.shared_noise;
    params.signature_frac = opts.signature_frac;
    params.tgt_topic_blur = opts.tgt_topic_blur;
    params.src_lang = opts.src_lang;
    params.tgt_lang = opts.tgt_lang;
    params.seed = opts.seed;
    const auto docs = synth::gen_topic_corpus(fixture.lexicon, params);

    const fs::path dir(opts.out_dir);
    embeddings::save_model(fixture.src, (dir / "src.vec").string());
    embeddings::save_model(fixture.tgt, (dir / "tgt.vec").string());
    mapping::save_lexicon(fixture.lexicon, (dir / "lexicon.tsv").string());
    mapping::save_transform(fixture.gold, (dir / "gold_transform.json").string());
    corpus::save_documents(docs, (dir / "corpus.jsonl").string());
    editdist::save_inventory(build_inventory(docs, opts.tgt_lang),
                             (dir / "inventory.tsv").string());

    std::cout << "vocab: " << opts.vocab_size << " x " << opts.dim
              << "d, noise sigma: " << text::format_double(opts.noise_sigma) << "\n"
              << "corpus: " << docs.docs.size() << " documents (" << opts.topics
              << " topics x " << opts.docs_per_topic << " docs x 2 languages)\n"
              << "wrote src.vec tgt.vec lexicon.tsv gold_transform.json corpus.jsonl "
                 "inventory.tsv under "
              << opts.out_dir << "\n";
    return 0;
}

// ------------------------------------------------------------ learn-map ----

struct LearnOpts {
    std::string src_model, tgt_model, lexicon, out, report;
    double lambda = 0.0;
    std::string sweep;
    std::size_t train_size = 4500;
    std::size_t test_size = 500;
    std::uint64_t seed = 42;
    std::string ks_csv = "1,5";
    bool normalize = false;
};

int run_learn_map(const LearnOpts& opts) {
    const auto src = embeddings::load_model(opts.src_model, std::nullopt, opts.normalize);
    const auto tgt = embeddings::load_model(opts.tgt_model, std::nullopt, opts.normalize);
    const auto lexicon = mapping::load_lexicon(opts.lexicon);
    const auto ks = parse_ks(opts.ks_csv);
    if (opts.lambda < 0.0)
        throw Error(ErrorKind::InvalidArgument, "lambda must be non-negative");

    const auto [train, test] =
        mapping::split_lexicon(lexicon, opts.train_size, opts.test_size, opts.seed);
    const auto pm = mapping::build_training_pairs(train, src, tgt);
    const std::vector<double> lambdas =
        opts.sweep.empty() ? std::vector<double>{opts.lambda} : parse_sweep(opts.sweep);

    struct Row {
        double lambda;
        mapping::AccuracyReport train_acc, test_acc;
    };
    std::vector<Row> rows;
    std::optional<mapping::TransformMatrix> best;
    double best_acc = -1.0;
    double best_lambda = 0.0;
    for (const double lambda : lambdas) {
        auto t = mapping::learn_transform(pm, lambda);
        Row row{lambda, mapping::eval_translation(t, train, src, tgt, ks),
                mapping::eval_translation(t, test, src, tgt, ks)};
        // model selection: test accuracy at the first k, ties to the smaller
        // lambda (rows are scanned in ascending order)
        if (row.test_acc.accuracy[0] > best_acc) {
            best_acc = row.test_acc.accuracy[0];
            best_lambda = lambda;
            best = std::move(t);
        }
        rows.push_back(std::move(row));
    }

    std::ostringstream table;
    table << std::left << std::setw(10) << "lambda";
    for (const auto k : ks) table << std::setw(11) << ("train@" + std::to_string(k));
    for (const auto k : ks) table << std::setw(11) << ("test@" + std::to_string(k));
    table << "\n" << std::fixed << std::setprecision(4);
    for (const auto& row : rows) {
        table << std::setw(10) << text::format_double(row.lambda);
        for (const auto a : row.train_acc.accuracy) table << std::setw(11) << a;
        for (const auto a : row.test_acc.accuracy) table << std::setw(11) << a;
        table << "\n";
    }
    std::cout << table.str();
    std::cout << "train pairs used: " << pm.kept_pairs.size()
              << ", test sources evaluable: " << rows.front().test_acc.evaluable << "\n";
    if (lambdas.size() > 1)
        std::cout << "selected lambda: " << text::format_double(best_lambda) << "\n";

    mapping::save_transform(*best, opts.out);
    std::cout << "wrote transform: " << opts.out << "\n";

    if (!opts.report.empty()) {
        nlohmann::ordered_json j;
        j["schema"] = "xlingmap/1";
        j["ks"] = ks;
        j["seed"] = opts.seed;
        j["train_size"] = opts.train_size;
        j["test_size"] = opts.test_size;
        j["train_pairs_used"] = pm.kept_pairs.size();
        nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json r;
            r["lambda"] = row.lambda;
            r["train_accuracy"] = row.train_acc.accuracy;
            r["train_evaluable"] = row.train_acc.evaluable;
            r["test_accuracy"] = row.test_acc.accuracy;
            r["test_evaluable"] = row.test_acc.evaluable;
            jrows.push_back(std::move(r));
        }
        j["rows"] = std::move(jrows);
        j["selected_lambda"] = best_lambda;
        auto out = text::open_output(opts.report);
        out << j.dump(2) << '\n';
        if (!out) throw Error(ErrorKind::Io, "failed writing " + opts.report);
        std::cout << "wrote report: " << opts.report << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- cluster ----

struct ClusterOpts {
    std::string corpus_path, method, scheme;
    std::string src_model, tgt_model, transform, inventory, lexicon;
    std::string src_lang = "uk", tgt_lang = "ru";
    std::size_t k = 0;  // 0 = one cluster per gold topic
    std::uint64_t seed = 42;
    std::size_t restarts = 10;
    std::size_t max_iter = 300;
    double tol = 1e-6;
    std::string vocab_mode = "per_topic";
    std::size_t vocab_x = 500;
    std::string replace_pos = "S,A,V,ABBR";
    bool normalize = false;
    std::string out_assignments, out_report, emit_2d;
};

bool is_bow_method(const std::string& m) {
    return m == "naive-binary" || m == "naive-count" || m == "edit" || m == "dict-edit" ||
           m == "matrix-translate";
}

void require_flag(const std::string& value, const std::string& flag, const std::string& method) {
    if (value.empty())
        throw Error(ErrorKind::InvalidArgument, flag + " is required for --method " + method);
}

int run_cluster(const ClusterOpts& opts) {
    const auto docs = corpus::load_documents(opts.corpus_path);
    const auto& m = opts.method;

    if ((m == "naive-binary" || m == "naive-count" || m == "fp-types" || m == "fp-tokens") &&
        !opts.scheme.empty())
        throw Error(ErrorKind::InvalidArgument, "--scheme does not apply to --method " + m);

    // feature construction per method
    corpus::FeatureMatrix fm;
    if (m == "fp-types" || m == "fp-tokens") {
        require_flag(opts.src_model, "--src-model", m);
        require_flag(opts.tgt_model, "--tgt-model", m);
        require_flag(opts.transform, "--transform", m);
        const auto src = embeddings::load_model(opts.src_model, std::nullopt, opts.normalize);
        const auto tgt = embeddings::load_model(opts.tgt_model, std::nullopt, opts.normalize);
        const auto t = mapping::load_transform(opts.transform);
        const auto mode =
            m == "fp-types" ? fingerprint::Mode::Types : fingerprint::Mode::Tokens;
        fm = fingerprint::fingerprint_corpus(docs, src, tgt, t, opts.src_lang, opts.tgt_lang,
                                             mode);
    } else if (is_bow_method(m)) {
        corpus::BowScheme scheme;
        if (m == "naive-binary") scheme = corpus::BowScheme::Binary;
        else if (m == "naive-count") scheme = corpus::BowScheme::Count;
        else scheme = corpus::parse_bow_scheme(opts.scheme.empty() ? "binary" : opts.scheme);

        corpus::DocumentSet pipeline_docs;
        if (m == "naive-binary" || m == "naive-count") {
            pipeline_docs = docs;
        } else if (m == "edit") {
            require_flag(opts.inventory, "--inventory", m);
            const auto inv = editdist::load_inventory(opts.inventory);
            const auto pos = parse_pos_set(opts.replace_pos);
            pipeline_docs = translate_source_docs(docs, opts.src_lang, [&](const auto& subset) {
                return editdist::translate_corpus_edit(subset, inv, pos);
            });
        } else if (m == "dict-edit") {
            require_flag(opts.inventory, "--inventory", m);
            require_flag(opts.lexicon, "--lexicon", m);
            const auto inv = editdist::load_inventory(opts.inventory);
            const auto lex = mapping::load_lexicon(opts.lexicon);
            const auto pos = parse_pos_set(opts.replace_pos);
            pipeline_docs = translate_source_docs(docs, opts.src_lang, [&](const auto& subset) {
                return editdist::translate_corpus_hybrid(subset, lex, inv, pos);
            });
        } else {  // matrix-translate
            require_flag(opts.src_model, "--src-model", m);
            require_flag(opts.tgt_model, "--tgt-model", m);
            require_flag(opts.transform, "--transform", m);
            const auto src = embeddings::load_model(opts.src_model, std::nullopt, opts.normalize);
            const auto tgt = embeddings::load_model(opts.tgt_model, std::nullopt, opts.normalize);
            const auto t = mapping::load_transform(opts.transform);
            pipeline_docs = translate_corpus_matrix(docs, src, tgt, t, opts.src_lang);
        }

        const auto vocab = corpus::select_vocabulary(pipeline_docs, opts.vocab_x,
                                                     corpus::parse_vocab_mode(opts.vocab_mode));
        fm = corpus::vectorize(pipeline_docs, vocab, scheme);
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown --method '" + m + "'");
    }

    // cluster count defaults to the number of gold topics
    std::size_t k = opts.k;
    if (k == 0) {
        std::unordered_set<std::string> topics;
        for (const auto& doc : docs.docs)
            if (doc.topic) topics.insert(*doc.topic);
        if (topics.empty())
            throw Error(ErrorKind::InvalidArgument,
                        "--k is required when the corpus has no topic labels");
        k = topics.size();
    }

    cluster::KMeansParams params;
    params.k = k;
    params.seed = opts.seed;
    params.restarts = opts.restarts;
    params.max_iter = opts.max_iter;
    params.tol = opts.tol;
    const auto result = cluster::kmeans(fm, params);

    std::cout << "method: " << m << ", features: " << fm.feature_space << " ("
              << fm.matrix.cols() << "d), k: " << k << "\n";
    std::cout << "inertia: " << text::format_double(result.inertia) << " after "
              << result.iterations_run << " iterations (best of " << result.restarts_run
              << " restarts)\n";

    cluster::save_cluster_result(result, fm, opts.out_assignments);
    std::cout << "wrote assignments: " << opts.out_assignments << "\n";

    if (docs.all_labeled()) {
        const auto report = eval::map_clusters_to_topics(docs, result.assignments, k);
        std::cout << "\n";
        eval::print_report(std::cout, report);
        if (!opts.out_report.empty()) {
            nlohmann::ordered_json j;
            j["schema"] = "xlingmap/1";
            j["method"] = m;
            j["k"] = k;
            j["seed"] = opts.seed;
            auto body = eval::report_to_json(report);
            for (auto& [key, value] : body.items())
                if (key != "schema") j[key] = value;
            auto out = text::open_output(opts.out_report);
            out << j.dump(2) << '\n';
            if (!out) throw Error(ErrorKind::Io, "failed writing " + opts.out_report);
            std::cout << "wrote report: " << opts.out_report << "\n";
        }
    } else if (!opts.out_report.empty()) {
        throw Error(ErrorKind::Validation,
                    "--out-report needs gold topic labels on every document");
    }

    if (!opts.emit_2d.empty()) {
        const auto coords = cluster::pca_2d(fm);
        cluster::save_pca_csv(docs, fm, coords, result, opts.emit_2d);
        std::cout << "wrote 2d projection: " << opts.emit_2d << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-lingual word embedding mapping and document clustering"};
    app.require_subcommand(1);

    SynthOpts synth_opts;
    auto* synth_cmd =
        app.add_subcommand("synth", "generate a seeded synthetic bilingual fixture");
    synth_cmd->add_option("--out", synth_opts.out_dir, "output directory")->required();
    synth_cmd->add_option("--seed", synth_opts.seed, "seed for all generators")->required();
    synth_cmd->add_option("--vocab-size", synth_opts.vocab_size, "words per language")
        ->capture_default_str();
    synth_cmd->add_option("--dim", synth_opts.dim, "embedding dimensionality")
        ->capture_default_str();
    synth_cmd->add_option("--noise-sigma", synth_opts.noise_sigma, "target-space noise stddev")
        ->capture_default_str();
    synth_cmd->add_option("--topics", synth_opts.topics, "number of topics")
        ->capture_default_str();
    synth_cmd
        ->add_option("--docs-per-topic", synth_opts.docs_per_topic,
                     "documents per topic per language")
        ->capture_default_str();
    synth_cmd->add_option("--doc-len", synth_opts.doc_len, "tokens per document")
        ->capture_default_str();
    synth_cmd
        ->add_option("--vocab-per-topic", synth_opts.vocab_per_topic,
                     "signature words per topic")
        ->capture_default_str();
    synth_cmd
        ->add_option("--shared-noise", synth_opts.shared_noise,
                     "size of the shared noise vocabulary")
        ->capture_default_str();
    synth_cmd
        ->add_option("--signature-frac", synth_opts.signature_frac,
                     "fraction of tokens drawn from the topic signature")
        ->capture_default_str();
    synth_cmd
        ->add_option("--tgt-topic-blur", synth_opts.tgt_topic_blur,
                     "chance a tgt-side signature token leaks into another topic")
        ->capture_default_str();
    synth_cmd->add_option("--src-lang", synth_opts.src_lang, "source language tag")
        ->capture_default_str();
    synth_cmd->add_option("--tgt-lang", synth_opts.tgt_lang, "target language tag")
        ->capture_default_str();

    LearnOpts learn_opts;
    auto* learn_cmd = app.add_subcommand(
        "learn-map", "learn a source->target transform from a bilingual lexicon");
    learn_cmd->add_option("--src-model", learn_opts.src_model, "source embeddings (word2vec text)")
        ->required();
    learn_cmd->add_option("--tgt-model", learn_opts.tgt_model, "target embeddings (word2vec text)")
        ->required();
    learn_cmd->add_option("--lexicon", learn_opts.lexicon, "bilingual lexicon TSV")->required();
    learn_cmd->add_option("--out", learn_opts.out, "transform output path")->required();
    learn_cmd->add_option("--report", learn_opts.report, "accuracy report JSON path");
    auto* lambda_opt = learn_cmd
                           ->add_option("--lambda", learn_opts.lambda,
                                        "ridge regularization strength")
                           ->capture_default_str();
    learn_cmd->add_option("--lambda-sweep", learn_opts.sweep, "start:stop:step lambda grid")
        ->excludes(lambda_opt);
    learn_cmd->add_option("--train-size", learn_opts.train_size, "training pairs")
        ->capture_default_str();
    learn_cmd->add_option("--test-size", learn_opts.test_size, "held-out pairs")
        ->capture_default_str();
    learn_cmd->add_option("--seed", learn_opts.seed, "split shuffle seed")
        ->capture_default_str();
    learn_cmd->add_option("--ks", learn_opts.ks_csv, "accuracy@k ranks, comma separated")
        ->capture_default_str();
    learn_cmd->add_flag("--normalize", learn_opts.normalize,
                        "length-normalize vectors at load time");

    ClusterOpts cluster_opts;
    auto* cluster_cmd =
        app.add_subcommand("cluster", "cluster a bilingual corpus and score against topics");
    cluster_cmd->add_option("--corpus", cluster_opts.corpus_path, "documents JSONL")->required();
    cluster_cmd
        ->add_option("--method", cluster_opts.method,
                     "naive-binary|naive-count|edit|dict-edit|matrix-translate|fp-types|fp-tokens")
        ->required();
    cluster_cmd->add_option("--scheme", cluster_opts.scheme,
                            "binary|count|tfidf (translate methods only)");
    cluster_cmd->add_option("--src-model", cluster_opts.src_model, "source embeddings");
    cluster_cmd->add_option("--tgt-model", cluster_opts.tgt_model, "target embeddings");
    cluster_cmd->add_option("--transform", cluster_opts.transform, "learned transform JSON");
    cluster_cmd->add_option("--inventory", cluster_opts.inventory, "target word inventory TSV");
    cluster_cmd->add_option("--lexicon", cluster_opts.lexicon, "bilingual lexicon TSV");
    cluster_cmd->add_option("--src-lang", cluster_opts.src_lang, "language to translate from")
        ->capture_default_str();
    cluster_cmd->add_option("--tgt-lang", cluster_opts.tgt_lang, "language translated into")
        ->capture_default_str();
    cluster_cmd->add_option("--k", cluster_opts.k, "clusters (default: gold topic count)");
    cluster_cmd->add_option("--seed", cluster_opts.seed, "k-means seed")->capture_default_str();
    cluster_cmd->add_option("--restarts", cluster_opts.restarts, "k-means restarts")
        ->capture_default_str();
    cluster_cmd->add_option("--max-iter", cluster_opts.max_iter, "max Lloyd iterations")
        ->capture_default_str();
    cluster_cmd->add_option("--tol", cluster_opts.tol, "centroid movement tolerance")
        ->capture_default_str();
    cluster_cmd->add_option("--vocab-mode", cluster_opts.vocab_mode, "global|per_topic")
        ->capture_default_str();
    cluster_cmd->add_option("--vocab-x", cluster_opts.vocab_x, "top words kept per ranking")
        ->capture_default_str();
    cluster_cmd
        ->add_option("--replace-pos", cluster_opts.replace_pos,
                     "PoS tags eligible for quasi-translation")
        ->capture_default_str();
    cluster_cmd->add_flag("--normalize", cluster_opts.normalize,
                          "length-normalize vectors at load time");
    cluster_cmd->add_option("--out-assignments", cluster_opts.out_assignments,
                            "cluster assignment JSON path")
        ->required();
    cluster_cmd->add_option("--out-report", cluster_opts.out_report, "topic report JSON path");
    cluster_cmd->add_option("--emit-2d", cluster_opts.emit_2d, "2d projection CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (synth_cmd->parsed()) return run_synth(synth_opts);
        if (learn_cmd->parsed()) return run_learn_map(learn_opts);
        if (cluster_cmd->parsed()) return run_cluster(cluster_opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
    return 0;
}
