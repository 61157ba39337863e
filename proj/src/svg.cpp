#include "qclab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

constexpr double kWidth = 860.0, kHeight = 520.0;
constexpr double kLeft = 72.0, kRight = 24.0, kTop = 40.0, kBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
    if (series.empty()) throw ValidationError("svg: need at least one series");
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const PlotSeries& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw ValidationError("svg: series '" + s.label + "' empty or ragged");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i];
            if (opt.log_x) {
                if (!(x > 0.0))
                    throw ValidationError("svg: log abscissa requires positive x");
                x = std::log10(x);
            }
            const double y = s.y[i];
            if (!std::isfinite(x) || !std::isfinite(y))
                throw ValidationError("svg: non-finite sample in series '" + s.label + "'");
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (opt.zero_line) {
        ymin = std::min(ymin, 0.0);
        ymax = std::max(ymax, 0.0);
    }
    if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-300) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) {
        if (opt.log_x) x = std::log10(x);
        return kLeft + plot_w * (x - xmin) / (xmax - xmin);
    };
    auto sy = [&](double y) { return kTop + plot_h * (1.0 - (y - ymin) / (ymax - ymin)); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << opt.title << "</text>\n";

    // frame and ticks
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double tx = xmin + (xmax - xmin) * i / nticks;
        const double px = kLeft + plot_w * i / nticks;
        const double label = opt.log_x ? std::pow(10.0, tx) : tx;
        svg << "<line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px
            << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(label) << "</text>\n";
        const double ty = ymin + (ymax - ymin) * i / nticks;
        const double py = sy(ty);
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
            << "\" y2=\"" << py << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(ty) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << opt.x_label << "</text>\n"
        << "<text x=\"18\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << kTop + plot_h / 2 << ")\">" << opt.y_label << "</text>\n";

    if (opt.zero_line && ymin < 0.0 && ymax > 0.0) {
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0.0) << "\" x2=\""
            << kLeft + plot_w << "\" y2=\"" << sy(0.0)
            << "\" stroke=\"#888\" stroke-dasharray=\"5,4\"/>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" "
            << "points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (i) svg << ' ';
            svg << num(sx(series[s].x[i])) << ',' << num(sy(series[s].y[i]));
        }
        svg << "\"/>\n";
    }

    // legend, top-right inside the frame
    const double lx = kLeft + plot_w - 180.0;
    double ly = kTop + 12.0;
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 26 << "\" y2=\""
            << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << lx + 32 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label
            << "</text>\n";
        ly += 18.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qclab
