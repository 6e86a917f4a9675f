#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fpc/core.hpp"

namespace fpc {

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v + 0.0);
    return buf;
}

}  // namespace detail

/// Static scatter plot of the dataset and centroids. Points are dots,
/// centroids crosses, outliers get a ring around their dot. Only the first
/// two coordinates are drawn (1-D data is placed on the x axis). Output is
/// byte-deterministic for identical inputs.
inline std::string render_plot_svg(const Dataset& ds, const CentroidSet& centroids,
                                   const std::vector<bool>& outliers = {}) {
    const double width = 640.0, height = 480.0;
    auto px = [](const Point& p) { return p.coords[0]; };
    auto py = [](const Point& p) { return p.dimension() > 1 ? p.coords[1] : 0.0; };

    double min_x = px(ds[0]), max_x = min_x, min_y = py(ds[0]), max_y = min_y;
    auto grow = [&](const Point& p) {
        min_x = std::min(min_x, px(p));
        max_x = std::max(max_x, px(p));
        min_y = std::min(min_y, py(p));
        max_y = std::max(max_y, py(p));
    };
    for (const Point& p : ds.points()) grow(p);
    for (const Point& p : centroids.centers()) grow(p);

    double span_x = max_x - min_x, span_y = max_y - min_y;
    if (span_x == 0.0) span_x = 1.0;
    if (span_y == 0.0) span_y = 1.0;
    min_x -= 0.1 * span_x;
    max_x += 0.1 * span_x;
    min_y -= 0.1 * span_y;
    max_y += 0.1 * span_y;

    auto sx = [&](double x) { return (x - min_x) / (max_x - min_x) * width; };
    auto sy = [&](double y) { return height - (y - min_y) / (max_y - min_y) * height; };
    using detail::svg_num;

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"#ffffff\" "
         "stroke=\"#999999\"/>\n";
    if (min_y < 0.0 && max_y > 0.0)
        s += "<line x1=\"0\" y1=\"" + svg_num(sy(0)) + "\" x2=\"640\" y2=\"" + svg_num(sy(0)) +
             "\" stroke=\"#dddddd\"/>\n";
    if (min_x < 0.0 && max_x > 0.0)
        s += "<line x1=\"" + svg_num(sx(0)) + "\" y1=\"0\" x2=\"" + svg_num(sx(0)) +
             "\" y2=\"480\" stroke=\"#dddddd\"/>\n";

    for (std::size_t k = 0; k < ds.size(); ++k) {
        const Point& p = ds[k];
        s += "<circle class=\"point\" cx=\"" + svg_num(sx(px(p))) + "\" cy=\"" +
             svg_num(sy(py(p))) + "\" r=\"4\" fill=\"#4878a8\"/>\n";
        if (!p.label.empty())
            s += "<text x=\"" + svg_num(sx(px(p)) + 6) + "\" y=\"" + svg_num(sy(py(p)) - 6) +
                 "\" font-size=\"10\" fill=\"#555555\">" + p.label + "</text>\n";
    }
    for (std::size_t k = 0; k < outliers.size() && k < ds.size(); ++k) {
        if (!outliers[k]) continue;
        const Point& p = ds[k];
        s += "<circle class=\"outlier\" cx=\"" + svg_num(sx(px(p))) + "\" cy=\"" +
             svg_num(sy(py(p))) + "\" r=\"9\" fill=\"none\" stroke=\"#c0392b\" "
             "stroke-width=\"2\"/>\n";
    }
    for (std::size_t i = 0; i < centroids.size(); ++i) {
        const Point& p = centroids[i];
        const double cx = sx(px(p)), cy = sy(py(p));
        s += "<g class=\"centroid\" stroke=\"#222222\" stroke-width=\"2\">";
        s += "<line x1=\"" + svg_num(cx - 6) + "\" y1=\"" + svg_num(cy - 6) + "\" x2=\"" +
             svg_num(cx + 6) + "\" y2=\"" + svg_num(cy + 6) + "\"/>";
        s += "<line x1=\"" + svg_num(cx - 6) + "\" y1=\"" + svg_num(cy + 6) + "\" x2=\"" +
             svg_num(cx + 6) + "\" y2=\"" + svg_num(cy - 6) + "\"/>";
        s += "<text x=\"" + svg_num(cx + 8) + "\" y=\"" + svg_num(cy + 4) +
             "\" font-size=\"12\" stroke=\"none\" fill=\"#222222\">c" + std::to_string(i + 1) +
             "</text></g>\n";
    }
    s += "</svg>\n";
    return s;
}

inline void emit_plot(const Dataset& ds, const CentroidSet& centroids,
                      const std::vector<bool>& outliers, const std::string& path) {
    const std::string svg = render_plot_svg(ds, centroids, outliers);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    out << svg;
    out.flush();
    if (!out)
        throw io_error("failed writing '" + path + "'");
}

}  // namespace fpc
