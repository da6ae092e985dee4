#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "xlingmap/corpus.hpp"
#include "xlingmap/error.hpp"
#include "xlingmap/linalg.hpp"
#include "xlingmap/prng.hpp"
#include "xlingmap/text.hpp"

namespace xlingmap::cluster {

struct KMeansParams {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::size_t restarts = 10;
    std::size_t max_iter = 300;
    double tol = 1e-6;
};

struct ClusterResult {
    std::vector<std::uint32_t> assignments; // per document, in [0, k)
    linalg::Matrix centroids;               // k x d
    double inertia = 0.0;                   // within-cluster sum of squared distances
    std::vector<double> inertia_history;    // per Lloyd iteration of the winning restart
    std::size_t iterations_run = 0;
    std::size_t restarts_run = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline double sq_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

// k-means++ seeding: first center uniform, then proportional to squared
// distance from the nearest chosen center.
inline linalg::Matrix seed_centroids(const linalg::Matrix& x, std::size_t k, rng::Prng& prng) {
    const std::size_t n = x.rows(), d = x.cols();
    linalg::Matrix centroids(k, d);
    std::vector<double> dist2(n, std::numeric_limits<double>::infinity());

    std::size_t first = static_cast<std::size_t>(prng.below(n));
    for (std::size_t c = 0; c < d; ++c) centroids(0, c) = x(first, c);

    for (std::size_t j = 1; j < k; ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dist2[i] = std::min(dist2[i], sq_distance(x.row(i), centroids.row(j - 1)));
            total += dist2[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = prng.uniform01() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += dist2[i];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<std::size_t>(prng.below(n)); // all points coincide
        }
        for (std::size_t c = 0; c < d; ++c) centroids(j, c) = x(pick, c);
    }
    return centroids;
}

struct LloydOutcome {
    std::vector<std::uint32_t> assignments;
    linalg::Matrix centroids;
    double inertia = 0.0;
    std::vector<double> inertia_history;
    std::size_t iterations = 0;
};

// Each iteration is assign -> repair empties -> update means, so the loop
// always ends right after an update: the returned centroids are exactly the
// means of the returned assignment and no cluster is empty (n >= k guarantees
// every empty can be refilled from a cluster of size >= 2).
inline LloydOutcome lloyd(const linalg::Matrix& x, std::size_t k, rng::Prng& prng,
                          std::size_t max_iter, double tol) {
    const std::size_t n = x.rows(), d = x.cols();
    LloydOutcome out;
    out.centroids = seed_centroids(x, k, prng);
    out.assignments.assign(n, 0);
    std::vector<double> point_dist2(n, 0.0);
    std::vector<std::size_t> counts(k, 0);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // assignment step; nearest centroid, ties to the lowest id
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::uint32_t best_j = 0;
            for (std::size_t j = 0; j < k; ++j) {
                const double dj = sq_distance(x.row(i), out.centroids.row(j));
                if (dj < best) {
                    best = dj;
                    best_j = static_cast<std::uint32_t>(j);
                }
            }
            out.assignments[i] = best_j;
            point_dist2[i] = best;
            inertia += best;
        }
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto a : out.assignments) ++counts[a];

        // empty-cluster repair: reseed with the point farthest from its
        // centroid, taken from a cluster that can spare one
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] > 0) continue;
            std::size_t farthest = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[out.assignments[i]] <= 1) continue;
                if (point_dist2[i] > far_d) {
                    far_d = point_dist2[i];
                    farthest = i;
                }
            }
            if (farthest == n)
                throw Error(ErrorKind::InsufficientData, "cannot repair empty cluster");
            --counts[out.assignments[farthest]];
            counts[j] = 1;
            out.assignments[farthest] = static_cast<std::uint32_t>(j);
            inertia -= point_dist2[farthest];
            point_dist2[farthest] = 0.0;
        }
        out.inertia = inertia;
        out.inertia_history.push_back(inertia);
        out.iterations = iter + 1;

        // update step: centroids become the means of their clusters
        linalg::Matrix sums(k, d);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t j = out.assignments[i];
            const auto row = x.row(i);
            for (std::size_t c = 0; c < d; ++c) sums(j, c) += row[c];
        }
        double movement = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            double delta = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double mean = sums(j, c) / static_cast<double>(counts[j]);
                const double diff = mean - out.centroids(j, c);
                delta += diff * diff;
                out.centroids(j, c) = mean;
            }
            movement = std::max(movement, std::sqrt(delta));
        }
        if (movement < tol) break;
    }

    // inertia of the returned state: distances to the final means
    double final_inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        final_inertia += sq_distance(x.row(i), out.centroids.row(out.assignments[i]));
    out.inertia = final_inertia;
    out.inertia_history.push_back(final_inertia);
    return out;
}

} // namespace detail

// Lloyd iterations with k-means++ seeding, best of `restarts` by inertia.
// Fully deterministic: restart r draws from a stream derived from (seed, r).
inline ClusterResult kmeans(const corpus::FeatureMatrix& x, const KMeansParams& params) {
    const std::size_t n = x.matrix.rows();
    if (params.k == 0) throw Error(ErrorKind::InvalidArgument, "kmeans: k must be positive");
    if (params.restarts == 0 || params.max_iter == 0)
        throw Error(ErrorKind::InvalidArgument, "kmeans: restarts and max_iter must be positive");
    if (!(params.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "kmeans: tol must be positive");
    if (n < params.k)
        throw Error(ErrorKind::InsufficientData, "kmeans: " + std::to_string(n) +
                                                     " documents for k=" + std::to_string(params.k));
    if (!x.matrix.all_finite())
        throw Error(ErrorKind::Validation, "kmeans: non-finite feature matrix");

    detail::LloydOutcome best;
    bool have_best = false;
    for (std::size_t r = 0; r < params.restarts; ++r) {
        rng::Prng prng(params.seed, r);
        auto outcome = detail::lloyd(x.matrix, params.k, prng, params.max_iter, params.tol);
        if (!have_best || outcome.inertia < best.inertia) {
            best = std::move(outcome);
            have_best = true;
        }
    }

    // a cluster left empty means k exceeded the number of distinct points
    std::vector<std::size_t> counts(params.k, 0);
    for (const auto a : best.assignments) ++counts[a];
    for (std::size_t j = 0; j < params.k; ++j)
        if (counts[j] == 0)
            throw Error(ErrorKind::InsufficientData,
                        "kmeans: cluster " + std::to_string(j) +
                            " is empty; fewer distinct points than k");

    ClusterResult result;
    result.assignments = std::move(best.assignments);
    result.centroids = std::move(best.centroids);
    result.inertia = best.inertia;
    result.inertia_history = std::move(best.inertia_history);
    result.iterations_run = best.iterations;
    result.restarts_run = params.restarts;
    result.seed = params.seed;
    return result;
}

// Projection onto the top-2 principal components of the mean-centered data.
// Component signs are fixed so each component's largest-magnitude loading is
// positive.
inline linalg::Matrix pca_2d(const corpus::FeatureMatrix& x) {
    const std::size_t n = x.matrix.rows(), d = x.matrix.cols();
    if (n < 2 || d < 2)
        throw Error(ErrorKind::InsufficientData, "pca_2d: need at least 2 documents and 2 features");
    if (!x.matrix.all_finite()) throw Error(ErrorKind::Validation, "pca_2d: non-finite matrix");

    linalg::Matrix centered = x.matrix;
    for (std::size_t c = 0; c < d; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += centered(r, c);
        mean /= static_cast<double>(n);
        for (std::size_t r = 0; r < n; ++r) centered(r, c) -= mean;
    }

    linalg::Matrix cov = linalg::gram(centered);
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (auto& v : cov.data()) v *= scale;

    const auto eig = linalg::jacobi_eigen_sym(cov);
    linalg::Matrix components(d, 2);
    for (std::size_t comp = 0; comp < 2; ++comp) {
        std::size_t arg = 0;
        double mag = -1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double m = std::abs(eig.vectors(i, comp));
            if (m > mag) {
                mag = m;
                arg = i;
            }
        }
        const double sign = eig.vectors(arg, comp) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i) components(i, comp) = sign * eig.vectors(i, comp);
    }
    return linalg::matmul(centered, components);
}

inline void save_cluster_result(const ClusterResult& result, const corpus::FeatureMatrix& x,
                                const std::string& path) {
    nlohmann::ordered_json obj;
    obj["schema"] = "xlingmap/1";
    obj["seed"] = result.seed;
    obj["inertia"] = result.inertia;
    obj["iterations_run"] = result.iterations_run;
    obj["restarts_run"] = result.restarts_run;
    nlohmann::ordered_json assignments;
    for (std::size_t i = 0; i < result.assignments.size(); ++i)
        assignments[x.doc_ids[i]] = result.assignments[i];
    obj["assignments"] = std::move(assignments);
    nlohmann::ordered_json centroids = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < result.centroids.rows(); ++j) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < result.centroids.cols(); ++c)
            row.push_back(result.centroids(j, c));
        centroids.push_back(std::move(row));
    }
    obj["centroids"] = std::move(centroids);
    auto out = text::open_output(path);
    out << obj.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

// "doc_id,x,y,lang,topic,cluster" rows, ready for external plotting.
inline void save_pca_csv(const corpus::DocumentSet& docs, const corpus::FeatureMatrix& fm,
                         const linalg::Matrix& coords, const ClusterResult& result,
                         const std::string& path) {
    if (coords.rows() != docs.docs.size() || result.assignments.size() != docs.docs.size())
        throw Error(ErrorKind::Dimension, "save_pca_csv: row count mismatch");
    auto out = text::open_output(path);
    out << "doc_id,x,y,lang,topic,cluster\n";
    for (std::size_t i = 0; i < docs.docs.size(); ++i) {
        const auto& doc = docs.docs[i];
        out << text::csv_escape(fm.doc_ids[i]) << ',' << text::format_double(coords(i, 0)) << ','
            << text::format_double(coords(i, 1)) << ',' << text::csv_escape(doc.lang) << ','
            << text::csv_escape(doc.topic.value_or("")) << ',' << result.assignments[i] << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

} // namespace xlingmap::cluster
