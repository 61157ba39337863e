#pragma once

#include <string>
#include <vector>

namespace qclab {

// Single-panel static plot: one polyline per series, optional log-scaled
// abscissa (used whenever the x data is a radius grid) and an optional
// horizontal zero line for margin plots. Legend lists series in input order.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool zero_line = false;
};

std::string render_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt);

}  // namespace qclab
