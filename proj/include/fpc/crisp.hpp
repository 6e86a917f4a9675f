#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fpc/core.hpp"

namespace fpc {

/// Thrown when a centroid update finds a cluster with no contributing points.
class empty_cluster_error : public error {
public:
    empty_cluster_error(std::size_t cluster, const std::string& msg)
        : error(msg), cluster_(cluster) {}
    empty_cluster_error(std::size_t cluster, std::size_t iteration, const std::string& msg)
        : error(msg), cluster_(cluster), iteration_(iteration) {}

    std::size_t cluster() const { return cluster_; }
    std::optional<std::size_t> iteration() const { return iteration_; }

private:
    std::size_t cluster_;
    std::optional<std::size_t> iteration_;
};

/// Hard partition: a c x N matrix of 0/1 memberships plus, per element, the
/// full set of clusters at minimal distance (ties within tolerance). The
/// matrix always puts the 1 on the lowest-index member of the tie set.
struct CrispPartition {
    Matrix matrix;
    std::vector<std::vector<std::size_t>> tie_sets;
};

struct LloydResult {
    CentroidSet centroids;
    CrispPartition partition;
    std::size_t iterations = 0;
    bool converged = false;
};

/// All cluster indices whose distance to p is within tie_tol of the minimum,
/// in ascending order.
inline std::vector<std::size_t> nearest_clusters(const Point& p, const CentroidSet& centroids,
                                                 Metric metric, double tie_tol) {
    if (!(tie_tol >= 0.0))
        throw error("nearest_clusters: tie_tol must be >= 0");
    std::vector<double> dist(centroids.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centroids.size(); ++i) {
        dist[i] = distance(metric, p, centroids[i]);
        best = std::min(best, dist[i]);
    }
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < centroids.size(); ++i)
        if (dist[i] <= best + tie_tol) result.push_back(i);
    return result;
}

/// Assign each element to the lowest-index cluster of its tie set.
inline CrispPartition crisp_assign(const Dataset& ds, const CentroidSet& centroids,
                                   Metric metric, double tie_tol) {
    CrispPartition part{Matrix(centroids.size(), ds.size()), {}};
    part.tie_sets.reserve(ds.size());
    for (std::size_t k = 0; k < ds.size(); ++k) {
        std::vector<std::size_t> ties = nearest_clusters(ds[k], centroids, metric, tie_tol);
        part.matrix(ties.front(), k) = 1.0;
        part.tie_sets.push_back(std::move(ties));
    }
    return part;
}

/// Tie-inclusive centroid update: every element contributes fully to each
/// cluster in its tie set, so an equidistant element is averaged into all of
/// its nearest clusters.
inline CentroidSet update_centroids(const Dataset& ds, const CrispPartition& partition) {
    const std::size_t c = partition.matrix.rows();
    if (partition.tie_sets.size() != ds.size())
        throw error("update_centroids: tie_sets do not cover the dataset");
    std::vector<std::vector<double>> sums(c, std::vector<double>(ds.dimension(), 0.0));
    std::vector<std::size_t> counts(c, 0);
    for (std::size_t k = 0; k < ds.size(); ++k) {
        for (std::size_t i : partition.tie_sets[k]) {
            if (i >= c)
                throw error("update_centroids: tie set references cluster " + std::to_string(i));
            for (std::size_t j = 0; j < ds.dimension(); ++j)
                sums[i][j] += ds[k].coords[j];
            ++counts[i];
        }
    }
    std::vector<Point> centers(c);
    for (std::size_t i = 0; i < c; ++i) {
        if (counts[i] == 0)
            throw empty_cluster_error(i, "update_centroids: cluster " + std::to_string(i + 1) +
                                             " has no contributing points");
        for (double& v : sums[i]) v /= static_cast<double>(counts[i]);
        centers[i] = Point(std::move(sums[i]));
    }
    return CentroidSet(std::move(centers));
}

/// Alternate assign/update rounds until the partition matrix repeats or
/// max_iters rounds have run. Convergence means one further assign with the
/// returned centroids reproduces the returned partition.
inline LloydResult lloyd_iterate(const Dataset& ds, const CentroidSet& init, Metric metric,
                                 double tie_tol, std::size_t max_iters) {
    if (max_iters < 1)
        throw error("lloyd_iterate: max_iters must be >= 1");

    auto update_round = [&](const CrispPartition& p, std::size_t round) {
        try {
            return update_centroids(ds, p);
        } catch (const empty_cluster_error& e) {
            throw empty_cluster_error(e.cluster(), round,
                                      std::string(e.what()) + " (iteration " +
                                          std::to_string(round) + ")");
        }
    };

    CrispPartition part = crisp_assign(ds, init, metric, tie_tol);
    CentroidSet centroids = update_round(part, 1);
    std::size_t iterations = 1;
    bool converged = false;
    for (;;) {
        CrispPartition next = crisp_assign(ds, centroids, metric, tie_tol);
        if (next.matrix == part.matrix) {
            part = std::move(next);  // tie sets of the final centroids
            converged = true;
            break;
        }
        if (iterations >= max_iters) break;
        part = std::move(next);
        centroids = update_round(part, ++iterations);
    }
    return LloydResult{std::move(centroids), std::move(part), iterations, converged};
}

/// Check the three hard-partition rules: binary entries, unit column sums,
/// row sums strictly between 0 and N.
inline Verdict validate_crisp(const CrispPartition& partition) {
    const Matrix& u = partition.matrix;
    Verdict verdict;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t k = 0; k < u.cols(); ++k)
            if (u(i, k) != 0.0 && u(i, k) != 1.0)
                verdict.violations.push_back({Condition::binary_values, i, k, u(i, k)});
    for (std::size_t k = 0; k < u.cols(); ++k) {
        const double s = u.column_sum(k);
        if (s != 1.0)
            verdict.violations.push_back({Condition::unit_column_sum, npos, k, s});
    }
    const double n = static_cast<double>(u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i) {
        const double s = u.row_sum(i);
        if (!(s > 0.0 && s < n))
            verdict.violations.push_back({Condition::row_sum_range, i, npos, s});
    }
    return verdict;
}

}  // namespace fpc
