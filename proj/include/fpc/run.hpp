#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fpc/core.hpp"
#include "fpc/crisp.hpp"
#include "fpc/csv.hpp"
#include "fpc/fixture.hpp"
#include "fpc/fuzzy.hpp"
#include "fpc/possibilistic.hpp"

namespace fpc {

/// Invalid run configuration (bad flag combination, mismatched shapes, ...).
class config_error : public error {
public:
    using error::error;
};

enum class Mode {
    crisp,
    fuzzy,
    possibilistic,
};

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::crisp: return "crisp";
        case Mode::fuzzy: return "fuzzy";
        case Mode::possibilistic: return "possibilistic";
    }
    return "unknown";
}

enum class OutputFormat {
    csv,
    json,
};

enum class CentroidPolicy {
    fixture_default,  // the fixture's own centroid set
    first_k,          // the first c points of the dataset
    explicit_list,    // caller-supplied coordinates
};

inline const char* to_string(CentroidPolicy p) {
    switch (p) {
        case CentroidPolicy::fixture_default: return "fixture-default";
        case CentroidPolicy::first_k: return "first-k";
        case CentroidPolicy::explicit_list: return "explicit";
    }
    return "unknown";
}

struct RunConfig {
    std::string input_path;  // exactly one of input_path / fixture is set
    std::string fixture;
    Mode mode = Mode::possibilistic;
    std::optional<Metric> metric;          // default: squared for possibilistic, else euclidean
    std::optional<std::size_t> clusters;   // must match the resolved centroid count when set
    std::optional<CentroidPolicy> centroid_policy;  // default: fixture-default / first-k
    std::vector<Point> centroids;          // for explicit_list
    double tie_tol = 1e-9;
    std::size_t max_iters = 100;
    OutputFormat format = OutputFormat::csv;
    std::string plot_path;
    bool full_precision = false;
};

inline Metric resolved_metric(const RunConfig& cfg) {
    if (cfg.metric) return *cfg.metric;
    return cfg.mode == Mode::possibilistic ? Metric::squared_euclidean : Metric::euclidean;
}

inline CentroidPolicy resolved_centroid_policy(const RunConfig& cfg) {
    if (cfg.centroid_policy) return *cfg.centroid_policy;
    return cfg.fixture.empty() ? CentroidPolicy::first_k : CentroidPolicy::fixture_default;
}

struct LloydInfo {
    std::size_t iterations = 0;
    bool converged = false;
};

struct RunResult {
    Dataset dataset;
    CentroidSet centroids;  // final centroids (crisp) or the supplied ones
    Mode mode;
    Metric metric;
    Matrix memberships;     // final matrix for the selected mode
    Regime regime;
    std::optional<LloydInfo> lloyd;
    std::optional<Matrix> fuzzy_stage;  // possibilistic: pre-rescale memberships
    std::vector<std::optional<ClusterStats>> stats;
    std::optional<OutlierReport> report;

    std::vector<bool> outlier_flags() const {
        std::vector<bool> flags(dataset.size(), false);
        if (report)
            for (std::size_t k = 0; k < report->elements.size(); ++k)
                flags[k] = report->elements[k].outlier;
        return flags;
    }
};

namespace detail {

inline Dataset load_dataset(const RunConfig& cfg) {
    if (!cfg.fixture.empty()) {
        if (!is_fixture_name(cfg.fixture))
            throw config_error("unknown fixture '" + cfg.fixture +
                               "' (available: paper, paper11)");
        return fixture_dataset(cfg.fixture);
    }
    std::ifstream in(cfg.input_path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + cfg.input_path + "'");
    return parse_csv(in);
}

inline CentroidSet resolve_centroids(const RunConfig& cfg, const Dataset& ds) {
    const CentroidPolicy policy = resolved_centroid_policy(cfg);
    switch (policy) {
        case CentroidPolicy::explicit_list: {
            if (cfg.centroids.empty())
                throw config_error("explicit centroid list is empty");
            for (const Point& p : cfg.centroids)
                if (p.dimension() != ds.dimension())
                    throw config_error("centroid dimension " + std::to_string(p.dimension()) +
                                       " does not match dataset dimension " +
                                       std::to_string(ds.dimension()));
            return CentroidSet(cfg.centroids);
        }
        case CentroidPolicy::first_k: {
            const std::size_t c = cfg.clusters.value_or(2);
            if (c < 1) throw config_error("cluster count must be >= 1");
            if (c > ds.size())
                throw config_error("first-k centroids: " + std::to_string(c) +
                                   " clusters but only " + std::to_string(ds.size()) + " points");
            std::vector<Point> centers;
            for (std::size_t i = 0; i < c; ++i)
                centers.push_back(Point(ds[i].coords));
            return CentroidSet(std::move(centers));
        }
        case CentroidPolicy::fixture_default: {
            if (cfg.fixture.empty())
                throw config_error("fixture-default centroids require a fixture input");
            return fixture_centroids(cfg.fixture);
        }
    }
    throw config_error("unreachable centroid policy");
}

}  // namespace detail

inline RunResult run_analysis(const RunConfig& cfg) {
    if (cfg.input_path.empty() == cfg.fixture.empty())
        throw config_error("exactly one of input path and fixture must be given");
    if (!(cfg.tie_tol >= 0.0))
        throw config_error("tie tolerance must be >= 0");
    if (cfg.max_iters < 1)
        throw config_error("max iterations must be >= 1");
    if (cfg.clusters && *cfg.clusters < 1)
        throw config_error("cluster count must be >= 1");

    Dataset ds = detail::load_dataset(cfg);
    CentroidSet centroids = detail::resolve_centroids(cfg, ds);
    if (cfg.clusters && *cfg.clusters != centroids.size())
        throw config_error("--clusters " + std::to_string(*cfg.clusters) + " but " +
                           std::to_string(centroids.size()) + " centroids resolved");
    const Metric metric = resolved_metric(cfg);

    switch (cfg.mode) {
        case Mode::crisp: {
            LloydResult lr = lloyd_iterate(ds, centroids, metric, cfg.tie_tol, cfg.max_iters);
            return RunResult{std::move(ds),
                             std::move(lr.centroids),
                             cfg.mode,
                             metric,
                             std::move(lr.partition.matrix),
                             Regime::crisp,
                             LloydInfo{lr.iterations, lr.converged},
                             std::nullopt,
                             {},
                             std::nullopt};
        }
        case Mode::fuzzy: {
            MembershipMatrix m = fuzzy_memberships(ds, centroids, metric);
            return RunResult{std::move(ds),  std::move(centroids), cfg.mode,
                             metric,         std::move(m.values),  Regime::fuzzy,
                             std::nullopt,   std::nullopt,         {},
                             std::nullopt};
        }
        case Mode::possibilistic: {
            PossibilisticResult pr = run_possibilistic_pipeline(ds, centroids, metric, cfg.tie_tol);
            return RunResult{std::move(ds),
                             std::move(centroids),
                             cfg.mode,
                             metric,
                             std::move(pr.memberships.values),
                             Regime::possibilistic,
                             std::nullopt,
                             std::move(pr.fuzzy.values),
                             std::move(pr.stats),
                             std::move(pr.report)};
        }
    }
    throw config_error("unreachable mode");
}

// ---------------------------------------------------------------------------
// report rendering

namespace detail {

inline double round_half_up(double v, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::round(v * scale) / scale;
}

inline std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, round_half_up(v, digits) + 0.0);
    return buf;
}

struct NumberStyle {
    bool full = false;

    // paper-table precision: 2 decimals for coordinates and memberships,
    // 3 for distances
    std::string coord(double v) const { return full ? format_full(v) : format_fixed(v, 2); }
    std::string dist(double v) const { return full ? format_full(v) : format_fixed(v, 3); }
    std::string mem(double v) const { return full ? format_full(v) : format_fixed(v, 2); }
};

inline std::string join_nearest(const std::vector<std::size_t>& nearest) {
    std::string s;
    for (std::size_t i = 0; i < nearest.size(); ++i) {
        if (i) s += '|';
        s += std::to_string(nearest[i] + 1);
    }
    return s;
}

inline std::string source_string(const RunConfig& cfg) {
    return cfg.fixture.empty() ? "file:" + cfg.input_path : "fixture:" + cfg.fixture;
}

}  // namespace detail

/// CSV report: a membership table laid out like the source tables
/// (coordinates, centroid coordinates, distances, memberships), plus the
/// cluster statistics and outlier sections in possibilistic mode.
inline std::string render_csv(const RunConfig& cfg, const RunResult& r) {
    detail::NumberStyle num{cfg.full_precision};
    const std::size_t c = r.centroids.size();
    const std::size_t d = r.dataset.dimension();
    std::string out;

    if (r.lloyd) {
        out += "# lloyd\niterations,converged\n";
        out += std::to_string(r.lloyd->iterations);
        out += r.lloyd->converged ? ",true\n" : ",false\n";
    }

    out += "# memberships\nlabel";
    for (std::size_t j = 0; j < d; ++j) out += ",x" + std::to_string(j + 1);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < d; ++j)
            out += ",c" + std::to_string(i + 1) + "_x" + std::to_string(j + 1);
    for (std::size_t i = 0; i < c; ++i) out += ",d" + std::to_string(i + 1);
    for (std::size_t i = 0; i < c; ++i) out += ",u" + std::to_string(i + 1);
    if (r.report) {
        out += ",d_min";
        for (std::size_t i = 0; i < c; ++i) out += ",p" + std::to_string(i + 1);
    }
    out += '\n';

    for (std::size_t k = 0; k < r.dataset.size(); ++k) {
        const Point& p = r.dataset[k];
        out += p.label.empty() ? "p" + std::to_string(k + 1) : p.label;
        for (double v : p.coords) out += "," + num.coord(v);
        for (std::size_t i = 0; i < c; ++i)
            for (double v : r.centroids[i].coords) out += "," + num.coord(v);
        for (std::size_t i = 0; i < c; ++i)
            out += "," + num.dist(distance(r.metric, p, r.centroids[i]));
        const Matrix& u = r.fuzzy_stage ? *r.fuzzy_stage : r.memberships;
        for (std::size_t i = 0; i < c; ++i) out += "," + num.mem(u(i, k));
        if (r.report) {
            out += "," + num.dist(r.report->elements[k].d_min);
            for (std::size_t i = 0; i < c; ++i) out += "," + num.mem(r.memberships(i, k));
        }
        out += '\n';
    }

    if (!r.stats.empty()) {
        out += "# cluster_stats\ncluster,count,clust_d_max,q1,q3,iqr,w_sup\n";
        for (std::size_t i = 0; i < r.stats.size(); ++i) {
            out += std::to_string(i + 1);
            if (r.stats[i]) {
                const ClusterStats& s = *r.stats[i];
                out += "," + std::to_string(s.d_min_series.size());
                out += "," + num.dist(s.clust_d_max) + "," + num.dist(s.q1) + "," +
                       num.dist(s.q3) + "," + num.dist(s.iqr) + "," + num.dist(s.w_sup);
            } else {
                out += ",0,,,,,";
            }
            out += '\n';
        }
    }

    if (r.report) {
        out += "# outlier_report\nd_typic," + num.dist(r.report->d_typic) + '\n';
        out += "label,d_min,nearest,ambiguous,outlier,typicality,d_atipic\n";
        for (std::size_t k = 0; k < r.report->elements.size(); ++k) {
            const OutlierElement& e = r.report->elements[k];
            const Point& p = r.dataset[k];
            out += p.label.empty() ? "p" + std::to_string(k + 1) : p.label;
            out += "," + num.dist(e.d_min);
            out += "," + detail::join_nearest(e.nearest);
            out += e.ambiguous ? ",true" : ",false";
            out += e.outlier ? ",true" : ",false";
            out += "," + num.mem(e.typicality);
            out += ",";
            if (e.d_atipic) out += num.dist(*e.d_atipic);
            out += '\n';
        }
    }
    return out;
}

/// JSON report: full precision, one object with the dataset, the effective
/// configuration, centroids, the c x N membership matrix (row-major), the
/// per-cluster statistics and the outlier report (null when not produced).
inline nlohmann::json render_json(const RunConfig& cfg, const RunResult& r) {
    nlohmann::json j;

    nlohmann::json points = nlohmann::json::array();
    for (std::size_t k = 0; k < r.dataset.size(); ++k) {
        const Point& p = r.dataset[k];
        points.push_back({{"label", p.label.empty() ? "p" + std::to_string(k + 1) : p.label},
                          {"coords", p.coords}});
    }
    j["dataset"] = {{"source", detail::source_string(cfg)},
                    {"dimension", r.dataset.dimension()},
                    {"points", std::move(points)}};

    j["config"] = {{"mode", to_string(r.mode)},
                   {"metric", to_string(r.metric)},
                   {"clusters", r.centroids.size()},
                   {"centroids", to_string(resolved_centroid_policy(cfg))},
                   {"tie_tol", cfg.tie_tol},
                   {"max_iters", cfg.max_iters}};

    nlohmann::json centers = nlohmann::json::array();
    for (const Point& p : r.centroids.centers()) centers.push_back(p.coords);
    j["centroids"] = std::move(centers);

    nlohmann::json memberships = nlohmann::json::array();
    for (std::size_t i = 0; i < r.memberships.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < r.memberships.cols(); ++k)
            row.push_back(r.memberships(i, k));
        memberships.push_back(std::move(row));
    }
    j["memberships"] = std::move(memberships);

    if (r.lloyd)
        j["lloyd"] = {{"iterations", r.lloyd->iterations}, {"converged", r.lloyd->converged}};

    if (r.fuzzy_stage) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < r.fuzzy_stage->rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < r.fuzzy_stage->cols(); ++k)
                row.push_back((*r.fuzzy_stage)(i, k));
            rows.push_back(std::move(row));
        }
        j["fuzzy_memberships"] = std::move(rows);
    }

    if (r.stats.empty()) {
        j["cluster_stats"] = nullptr;
    } else {
        nlohmann::json stats = nlohmann::json::array();
        for (const auto& s : r.stats) {
            if (!s) {
                stats.push_back(nullptr);
                continue;
            }
            nlohmann::json series = nlohmann::json::array();
            for (const auto& [element, dist] : s->d_min_series)
                series.push_back({element, dist});
            stats.push_back({{"cluster", s->cluster_index},
                             {"count", s->d_min_series.size()},
                             {"d_min_series", std::move(series)},
                             {"clust_d_max", s->clust_d_max},
                             {"q1", s->q1},
                             {"q3", s->q3},
                             {"iqr", s->iqr},
                             {"w_sup", s->w_sup}});
        }
        j["cluster_stats"] = std::move(stats);
    }

    if (!r.report) {
        j["outlier_report"] = nullptr;
    } else {
        nlohmann::json elements = nlohmann::json::array();
        for (std::size_t k = 0; k < r.report->elements.size(); ++k) {
            const OutlierElement& e = r.report->elements[k];
            const Point& p = r.dataset[k];
            nlohmann::json je = {
                {"label", p.label.empty() ? "p" + std::to_string(k + 1) : p.label},
                {"d_min", e.d_min},
                {"nearest", e.nearest},
                {"ambiguous", e.ambiguous},
                {"outlier", e.outlier},
                {"typicality", e.typicality}};
            je["d_atipic"] = e.d_atipic ? nlohmann::json(*e.d_atipic) : nlohmann::json(nullptr);
            elements.push_back(std::move(je));
        }
        j["outlier_report"] = {{"d_typic", r.report->d_typic},
                               {"elements", std::move(elements)}};
    }
    return j;
}

}  // namespace fpc
