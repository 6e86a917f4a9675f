#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fpc/core.hpp"

namespace fpc {

enum class Regime {
    crisp,
    fuzzy,
    possibilistic,
};

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::crisp: return "crisp";
        case Regime::fuzzy: return "fuzzy";
        case Regime::possibilistic: return "possibilistic";
    }
    return "unknown";
}

/// c x N membership degrees together with the regime they were produced
/// under and the metric that drove them.
struct MembershipMatrix {
    Matrix values;
    Regime regime = Regime::fuzzy;
    Metric metric_used = Metric::euclidean;
};

/// Graded memberships against fixed centroids: each element's membership to a
/// cluster is its inverse distance, normalized over all clusters. An element
/// sitting exactly on one or more centroids has its membership split equally
/// among the zero-distance clusters.
inline MembershipMatrix fuzzy_memberships(const Dataset& ds, const CentroidSet& centroids,
                                          Metric metric) {
    const std::size_t c = centroids.size();
    MembershipMatrix m{Matrix(c, ds.size()), Regime::fuzzy, metric};
    std::vector<double> dist(c);
    std::vector<std::size_t> zeros;
    for (std::size_t k = 0; k < ds.size(); ++k) {
        zeros.clear();
        for (std::size_t i = 0; i < c; ++i) {
            dist[i] = distance(metric, ds[k], centroids[i]);
            if (dist[i] == 0.0) zeros.push_back(i);
        }
        if (!zeros.empty()) {
            const double share = 1.0 / static_cast<double>(zeros.size());
            for (std::size_t i : zeros) m.values(i, k) = share;
        } else {
            double total = 0.0;
            for (std::size_t i = 0; i < c; ++i) total += 1.0 / dist[i];
            for (std::size_t i = 0; i < c; ++i)
                m.values(i, k) = (1.0 / dist[i]) / total;
        }
    }
    return m;
}

/// One table row per element: its coordinates, the distance to every
/// centroid, and the membership to every cluster.
struct MembershipRow {
    std::string label;
    std::vector<double> coords;
    std::vector<double> distances;
    std::vector<double> memberships;
};

inline std::vector<MembershipRow> membership_table(const Dataset& ds,
                                                   const CentroidSet& centroids,
                                                   Metric metric) {
    const MembershipMatrix m = fuzzy_memberships(ds, centroids, metric);
    std::vector<MembershipRow> rows;
    rows.reserve(ds.size());
    for (std::size_t k = 0; k < ds.size(); ++k) {
        MembershipRow row;
        row.label = ds[k].label;
        row.coords = ds[k].coords;
        row.distances.reserve(centroids.size());
        row.memberships.reserve(centroids.size());
        for (std::size_t i = 0; i < centroids.size(); ++i) {
            row.distances.push_back(distance(metric, ds[k], centroids[i]));
            row.memberships.push_back(m.values(i, k));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Check the graded-partition rules: entries in [0,1], unit column sums
/// (within tolerance), row sums strictly between 0 and N. Applied to the
/// values regardless of the matrix's declared regime, so it can be used to
/// show that a possibilistic matrix no longer satisfies them.
inline Verdict validate_fuzzy(const MembershipMatrix& m, double column_tol = 1e-9) {
    const Matrix& u = m.values;
    Verdict verdict;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t k = 0; k < u.cols(); ++k)
            if (!(u(i, k) >= 0.0 && u(i, k) <= 1.0))
                verdict.violations.push_back({Condition::unit_interval, i, k, u(i, k)});
    for (std::size_t k = 0; k < u.cols(); ++k) {
        const double s = u.column_sum(k);
        if (!(std::abs(s - 1.0) <= column_tol))
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
