#pragma once

#include <string>
#include <vector>

#include "fpc/core.hpp"

namespace fpc {

/// The built-in demonstration dataset: ten points forming two mirror-image
/// groups, an ambiguous midpoint z11, and a far symmetric element z12.
inline std::vector<Point> paper_points() {
    return {
        Point({-6.0, 0.0}, "z1"),  Point({-4.0, 2.0}, "z2"),  Point({-4.0, 0.0}, "z3"),
        Point({-4.0, -2.0}, "z4"), Point({-2.0, 0.0}, "z5"),  Point({2.0, 0.0}, "z6"),
        Point({4.0, 2.0}, "z7"),   Point({4.0, 0.0}, "z8"),   Point({4.0, -2.0}, "z9"),
        Point({6.0, 0.0}, "z10"),  Point({0.0, 0.0}, "z11"),  Point({0.0, 7.0}, "z12"),
    };
}

/// Centroids of the two groups before z12 enters the picture.
inline CentroidSet paper_centroids_initial() {
    return CentroidSet({Point({-3.33, 0.0}), Point({3.33, 0.0})});
}

/// Centroids once z12 is averaged in: shifted toward it and off the axis.
inline CentroidSet paper_centroids_shifted() {
    return CentroidSet({Point({-2.85714, 1.0}), Point({2.85714, 1.0})});
}

inline bool is_fixture_name(const std::string& name) {
    return name == "paper" || name == "paper11";
}

/// "paper" is the full 12-point dataset; "paper11" drops the far element z12.
inline Dataset fixture_dataset(const std::string& name) {
    std::vector<Point> pts = paper_points();
    if (name == "paper") return Dataset(std::move(pts));
    if (name == "paper11") {
        pts.resize(11);  // z1..z11
        return Dataset(std::move(pts));
    }
    throw error("unknown fixture '" + name + "' (available: paper, paper11)");
}

/// Default centroids matching each fixture's geometry.
inline CentroidSet fixture_centroids(const std::string& name) {
    if (name == "paper") return paper_centroids_shifted();
    if (name == "paper11") return paper_centroids_initial();
    throw error("unknown fixture '" + name + "' (available: paper, paper11)");
}

}  // namespace fpc
