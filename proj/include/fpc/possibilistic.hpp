#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fpc/core.hpp"
#include "fpc/crisp.hpp"
#include "fpc/fuzzy.hpp"

namespace fpc {

/// Per-element nearest-centroid summary. An element is ambiguous when two or
/// more centroids sit at its minimal distance (within tie_tol).
struct MinDistanceEntry {
    double d_min = 0.0;
    std::vector<std::size_t> nearest;
    bool ambiguous = false;
};

inline std::vector<MinDistanceEntry> min_distance_series(const Dataset& ds,
                                                         const CentroidSet& centroids,
                                                         Metric metric, double tie_tol) {
    std::vector<MinDistanceEntry> entries;
    entries.reserve(ds.size());
    for (std::size_t k = 0; k < ds.size(); ++k) {
        MinDistanceEntry e;
        e.nearest = nearest_clusters(ds[k], centroids, metric, tie_tol);
        e.d_min = distance(metric, ds[k], centroids[e.nearest.front()]);
        e.ambiguous = e.nearest.size() >= 2;
        entries.push_back(std::move(e));
    }
    return entries;
}

/// Tukey hinges: after sorting, the first quartile is the median of the lower
/// half and the third quartile the median of the upper half, each half
/// including the overall median when the count is odd.
inline std::pair<double, double> quartiles(std::vector<double> values) {
    if (values.empty())
        throw error("quartiles: empty value list");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    auto median = [&values](std::size_t lo, std::size_t hi) {  // [lo, hi)
        const std::size_t m = hi - lo;
        const std::size_t mid = lo + m / 2;
        return m % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    };
    const std::size_t half = n / 2;
    if (n % 2 == 1)
        return {median(0, half + 1), median(half, n)};
    return {median(0, half), median(half, n)};
}

/// Distance statistics of one cluster's unambiguous members: the d_min
/// series, its maximum, the Tukey hinges and the upper fence
/// w_sup = q3 + 1.5 * (q3 - q1).
struct ClusterStats {
    std::size_t cluster_index = 0;
    std::vector<std::pair<std::size_t, double>> d_min_series;  // (element, d_min)
    double clust_d_max = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double w_sup = 0.0;
};

inline ClusterStats cluster_stats(std::size_t cluster_index,
                                  std::vector<std::pair<std::size_t, double>> series) {
    if (series.empty())
        throw error("cluster_stats: cluster " + std::to_string(cluster_index + 1) +
                    " has an empty distance series");
    ClusterStats stats;
    stats.cluster_index = cluster_index;
    std::vector<double> values;
    values.reserve(series.size());
    for (const auto& [element, d] : series) {
        (void)element;
        values.push_back(d);
    }
    stats.clust_d_max = *std::max_element(values.begin(), values.end());
    std::tie(stats.q1, stats.q3) = quartiles(values);
    stats.iqr = stats.q3 - stats.q1;
    stats.w_sup = stats.q3 + 1.5 * stats.iqr;
    stats.d_min_series = std::move(series);
    return stats;
}

/// Build the per-cluster statistics from the unambiguous elements only;
/// ambiguous elements are later tested against the fences but never shape
/// them. Clusters with no unambiguous member get no stats entry.
inline std::vector<std::optional<ClusterStats>> collect_cluster_stats(
    const std::vector<MinDistanceEntry>& entries, std::size_t cluster_count) {
    std::vector<std::vector<std::pair<std::size_t, double>>> series(cluster_count);
    for (std::size_t k = 0; k < entries.size(); ++k)
        if (!entries[k].ambiguous)
            series[entries[k].nearest.front()].emplace_back(k, entries[k].d_min);
    std::vector<std::optional<ClusterStats>> stats(cluster_count);
    for (std::size_t i = 0; i < cluster_count; ++i)
        if (!series[i].empty())
            stats[i] = cluster_stats(i, std::move(series[i]));
    return stats;
}

/// An element is an outlier iff its d_min exceeds w_sup for every cluster in
/// its nearest set (strictly; sitting exactly on the fence is still typical).
inline std::vector<bool> detect_outliers(const std::vector<MinDistanceEntry>& entries,
                                         const std::vector<std::optional<ClusterStats>>& stats) {
    std::vector<bool> outlier(entries.size(), false);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        bool beyond_all = true;
        for (std::size_t i : entries[k].nearest) {
            if (i >= stats.size() || !stats[i])
                throw error("detect_outliers: no stats for cluster " + std::to_string(i + 1) +
                            " referenced by element " + std::to_string(k + 1));
            if (!(entries[k].d_min > stats[i]->w_sup)) {
                beyond_all = false;
                break;
            }
        }
        outlier[k] = beyond_all;
    }
    return outlier;
}

namespace detail {

inline double select_d_typic_flagged(const std::vector<MinDistanceEntry>& entries,
                                     const std::vector<std::optional<ClusterStats>>& stats,
                                     const std::vector<bool>& outlier) {
    bool any_typical = false;
    bool found_ambiguous = false;
    double best = 0.0;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (outlier[k]) continue;
        any_typical = true;
        if (entries[k].ambiguous && (!found_ambiguous || entries[k].d_min > best)) {
            found_ambiguous = true;
            best = entries[k].d_min;
        }
    }
    if (!any_typical)
        throw error("select_d_typic: every element is an outlier");
    if (found_ambiguous) return best;
    // no ambiguous non-outlier: fall back to the largest in-cluster distance
    double max_d = 0.0;
    for (const auto& s : stats)
        if (s) max_d = std::max(max_d, s->clust_d_max);
    return max_d;
}

}  // namespace detail

/// Reference distance for the rescale: the largest d_min among ambiguous
/// non-outliers, falling back to the largest clust_d_max when no such
/// element exists.
inline double select_d_typic(const std::vector<MinDistanceEntry>& entries,
                             const std::vector<std::optional<ClusterStats>>& stats) {
    return detail::select_d_typic_flagged(entries, stats, detect_outliers(entries, stats));
}

/// Scale every membership of an outlier column by d_typic / d_atipic, where
/// d_atipic is that element's own d_min. Non-outlier columns are untouched.
/// The factor is capped at 1 so memberships can never grow past their fuzzy
/// values. For a two-cluster equidistant outlier the result is
/// (d_typic / d_atipic) / 2 per cluster, and an outlier column's sum drops
/// to d_typic / d_atipic.
inline MembershipMatrix possibilistic_rescale(const MembershipMatrix& m, double d_typic,
                                              const std::vector<MinDistanceEntry>& entries,
                                              const std::vector<bool>& outlier) {
    if (m.regime != Regime::fuzzy)
        throw error("possibilistic_rescale: input matrix must be fuzzy");
    if (!(d_typic > 0.0))
        throw error("possibilistic_rescale: d_typic must be > 0");
    if (entries.size() != m.values.cols() || outlier.size() != m.values.cols())
        throw error("possibilistic_rescale: element count mismatch");
    MembershipMatrix result{m.values, Regime::possibilistic, m.metric_used};
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!outlier[k]) continue;
        const double d_atipic = entries[k].d_min;
        if (!(d_atipic > 0.0))
            throw error("possibilistic_rescale: outlier element " + std::to_string(k + 1) +
                        " has non-positive distance");
        const double scale = std::min(1.0, d_typic / d_atipic);
        for (std::size_t i = 0; i < result.values.rows(); ++i)
            result.values(i, k) *= scale;
    }
    return result;
}

/// Check the possibilistic rules: entries in [0,1], at least one strictly
/// positive entry per column, row sums strictly between 0 and N. Column sums
/// below 1 are legal here; the shortfall encodes atypicality.
inline Verdict validate_possibilistic(const MembershipMatrix& m) {
    const Matrix& u = m.values;
    Verdict verdict;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t k = 0; k < u.cols(); ++k)
            if (!(u(i, k) >= 0.0 && u(i, k) <= 1.0))
                verdict.violations.push_back({Condition::unit_interval, i, k, u(i, k)});
    for (std::size_t k = 0; k < u.cols(); ++k) {
        bool has_support = false;
        for (std::size_t i = 0; i < u.rows(); ++i)
            if (u(i, k) > 0.0) {
                has_support = true;
                break;
            }
        if (!has_support)
            verdict.violations.push_back({Condition::column_support, npos, k, 0.0});
    }
    const double n = static_cast<double>(u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i) {
        const double s = u.row_sum(i);
        if (!(s > 0.0 && s < n))
            verdict.violations.push_back({Condition::row_sum_range, i, npos, s});
    }
    return verdict;
}

/// Per-element outcome of the outlier stage. typicality is the column sum of
/// the final memberships: 1 for typical elements, d_typic / d_atipic below 1
/// for outliers. d_atipic is only set for rescaled (outlier) elements.
struct OutlierElement {
    double d_min = 0.0;
    std::vector<std::size_t> nearest;
    bool ambiguous = false;
    bool outlier = false;
    double typicality = 1.0;
    std::optional<double> d_atipic;
};

struct OutlierReport {
    std::vector<OutlierElement> elements;
    double d_typic = 0.0;
};

struct PossibilisticResult {
    MembershipMatrix fuzzy;        // pre-rescale memberships
    MembershipMatrix memberships;  // final possibilistic matrix
    std::vector<std::optional<ClusterStats>> stats;
    OutlierReport report;
};

/// The full outlier-emphasis pipeline against fixed centroids: fuzzy
/// memberships, per-cluster distance fences, outlier flags, and the
/// typicality rescale.
inline PossibilisticResult run_possibilistic_pipeline(const Dataset& ds,
                                                      const CentroidSet& centroids,
                                                      Metric metric, double tie_tol) {
    MembershipMatrix fuzzy = fuzzy_memberships(ds, centroids, metric);
    const std::vector<MinDistanceEntry> entries =
        min_distance_series(ds, centroids, metric, tie_tol);
    std::vector<std::optional<ClusterStats>> stats =
        collect_cluster_stats(entries, centroids.size());
    const std::vector<bool> outlier = detect_outliers(entries, stats);
    const double d_typic = detail::select_d_typic_flagged(entries, stats, outlier);
    MembershipMatrix final_m = possibilistic_rescale(fuzzy, d_typic, entries, outlier);

    OutlierReport report;
    report.d_typic = d_typic;
    report.elements.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        OutlierElement e;
        e.d_min = entries[k].d_min;
        e.nearest = entries[k].nearest;
        e.ambiguous = entries[k].ambiguous;
        e.outlier = outlier[k];
        e.typicality = final_m.values.column_sum(k);
        if (outlier[k]) e.d_atipic = entries[k].d_min;
        report.elements.push_back(std::move(e));
    }
    return PossibilisticResult{std::move(fuzzy), std::move(final_m), std::move(stats),
                               std::move(report)};
}

}  // namespace fpc
