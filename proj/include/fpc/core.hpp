#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fpc {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched coordinate dimensions between points, datasets or centroid sets.
class dimension_error : public error {
public:
    using error::error;
};

/// Failure to read or write a file.
class io_error : public error {
public:
    using error::error;
};

/// A d-dimensional observation. The label is optional ("" = unlabeled).
struct Point {
    std::vector<double> coords;
    std::string label;

    Point() = default;
    Point(std::initializer_list<double> c) : coords(c) {}
    explicit Point(std::vector<double> c, std::string l = {})
        : coords(std::move(c)), label(std::move(l)) {}

    std::size_t dimension() const { return coords.size(); }

    bool operator==(const Point&) const = default;
};

inline bool all_finite(const Point& p) {
    return std::all_of(p.coords.begin(), p.coords.end(),
                       [](double v) { return std::isfinite(v); });
}

namespace detail {

inline std::size_t checked_dimension(const std::vector<Point>& pts, const char* what) {
    if (pts.empty())
        throw error(std::string(what) + ": at least one point required");
    const std::size_t d = pts.front().dimension();
    if (d == 0)
        throw error(std::string(what) + ": dimension must be >= 1");
    for (const Point& p : pts) {
        if (p.dimension() != d)
            throw dimension_error(std::string(what) + ": mixed point dimensions");
        if (!all_finite(p))
            throw error(std::string(what) + ": non-finite coordinate");
    }
    return d;
}

}  // namespace detail

/// Ordered collection of N points sharing one dimension. Element order is
/// preserved through every downstream computation; all outputs are
/// index-aligned with it.
class Dataset {
public:
    explicit Dataset(std::vector<Point> points)
        : points_(std::move(points)),
          dimension_(detail::checked_dimension(points_, "Dataset")) {
        std::vector<std::string> labels;
        for (const Point& p : points_)
            if (!p.label.empty()) labels.push_back(p.label);
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
            throw error("Dataset: duplicate point label");
    }

    std::size_t size() const { return points_.size(); }
    std::size_t dimension() const { return dimension_; }
    const std::vector<Point>& points() const { return points_; }
    const Point& operator[](std::size_t k) const { return points_[k]; }

    bool operator==(const Dataset&) const = default;

private:
    std::vector<Point> points_;
    std::size_t dimension_;
};

/// Ordered list of c cluster centers in the same space as the data.
class CentroidSet {
public:
    explicit CentroidSet(std::vector<Point> centers)
        : centers_(std::move(centers)),
          dimension_(detail::checked_dimension(centers_, "CentroidSet")) {}

    std::size_t size() const { return centers_.size(); }
    std::size_t dimension() const { return dimension_; }
    const std::vector<Point>& centers() const { return centers_; }
    const Point& operator[](std::size_t i) const { return centers_[i]; }

    bool operator==(const CentroidSet&) const = default;

private:
    std::vector<Point> centers_;
    std::size_t dimension_;
};

enum class Metric {
    euclidean,
    squared_euclidean,
};

inline const char* to_string(Metric m) {
    return m == Metric::euclidean ? "euclidean" : "squared";
}

inline double squared_euclidean_distance(const Point& a, const Point& b) {
    if (a.dimension() != b.dimension())
        throw dimension_error("distance: points of dimension " +
                              std::to_string(a.dimension()) + " and " +
                              std::to_string(b.dimension()));
    double sum = 0.0;
    for (std::size_t j = 0; j < a.coords.size(); ++j) {
        const double diff = a.coords[j] - b.coords[j];
        sum += diff * diff;
    }
    return sum;
}

inline double euclidean_distance(const Point& a, const Point& b) {
    return std::sqrt(squared_euclidean_distance(a, b));
}

inline double distance(Metric metric, const Point& a, const Point& b) {
    return metric == Metric::euclidean ? euclidean_distance(a, b)
                                       : squared_euclidean_distance(a, b);
}

/// Dense row-major matrix of membership values (c rows, N columns).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double row_sum(std::size_t r) const {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
        return s;
    }

    double column_sum(std::size_t c) const {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
        return s;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Partition/membership rules a matrix can break. Validators collect one
/// Violation per offending entry, column or row instead of throwing.
enum class Condition {
    binary_values,    // every entry must be exactly 0 or 1
    unit_interval,    // every entry must lie in [0,1]
    unit_column_sum,  // each element's memberships must sum to 1
    column_support,   // each element needs a strictly positive membership somewhere
    row_sum_range,    // each cluster's membership total must be in (0, N)
};

inline const char* describe(Condition c) {
    switch (c) {
        case Condition::binary_values: return "entry not in {0,1}";
        case Condition::unit_interval: return "entry not in [0,1]";
        case Condition::unit_column_sum: return "column does not sum to 1";
        case Condition::column_support: return "column has no positive entry";
        case Condition::row_sum_range: return "row sum not strictly between 0 and N";
    }
    return "unknown";
}

struct Violation {
    Condition condition;
    std::size_t cluster = npos;  // npos when not cluster-specific
    std::size_t element = npos;  // npos when not element-specific
    double value = 0.0;          // offending entry or sum
};

struct Verdict {
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }

    bool violates(Condition c) const {
        return std::any_of(violations.begin(), violations.end(),
                           [c](const Violation& v) { return v.condition == c; });
    }
};

}  // namespace fpc
