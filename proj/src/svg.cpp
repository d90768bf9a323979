#include "bohm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bohm::svg {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string header(int w, int h, const std::string& title) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
           "<text x=\"12\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" +
           title + "</text>\n";
}

} // namespace

std::string line_plot(const std::vector<std::vector<std::pair<double, double>>>& series,
                      const std::string& title, int width, int height) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (const auto& [x, y] : s) {
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    if (!(xmax > xmin)) { xmin -= 0.5; xmax += 0.5; }
    if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }
    const double mx = 40, my = 30;
    auto px = [&](double x) { return mx + (x - xmin) / (xmax - xmin) * (width - 2 * mx); };
    auto py = [&](double y) {
        return height - my - (y - ymin) / (ymax - ymin) * (height - 2 * my);
    };
    std::string out = header(width, height, title);
    out += "<rect x=\"" + fmt(mx) + "\" y=\"" + fmt(my) + "\" width=\"" +
           fmt(width - 2 * mx) + "\" height=\"" + fmt(height - 2 * my) +
           "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (const auto& s : series) {
        out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.7\" "
               "stroke-opacity=\"0.6\" points=\"";
        for (const auto& [x, y] : s) out += fmt(px(x)) + "," + fmt(py(y)) + " ";
        out += "\"/>\n";
    }
    return out + "</svg>\n";
}

std::string heat_map(const std::vector<double>& values, int nx, int ny,
                     double x0, double x1, double y0, double y1,
                     const std::string& title, int max_cells) {
    int sx = std::max(1, nx / max_cells);
    int sy = std::max(1, ny / max_cells);
    const int cx = nx / sx;
    const int cy = ny / sy;
    std::vector<double> cells(static_cast<std::size_t>(cx) * cy, 0.0);
    for (int i = 0; i < cx * sx; ++i)
        for (int j = 0; j < cy * sy; ++j)
            cells[static_cast<std::size_t>(i / sx) * cy + j / sy] +=
                values[static_cast<std::size_t>(i) * ny + j];
    double peak = 0.0;
    for (double v : cells) peak = std::max(peak, v);
    if (peak <= 0) peak = 1.0;

    const int width = 800, height = 700;
    const double mx = 40, my = 40;
    const double cw = (width - 2 * mx) / cx;
    const double ch = (height - 2 * my) / cy;
    std::string out = header(width, height, title + " [" + fmt(x0) + "," + fmt(x1) +
                                                "] x [" + fmt(y0) + "," + fmt(y1) + "]");
    for (int i = 0; i < cx; ++i) {
        for (int j = 0; j < cy; ++j) {
            const double v = cells[static_cast<std::size_t>(i) * cy + j] / peak;
            const int shade = 255 - static_cast<int>(std::lround(255.0 * std::sqrt(v)));
            if (shade > 250) continue;
            const std::string c = std::to_string(shade);
            out += "<rect x=\"" + fmt(mx + i * cw) + "\" y=\"" +
                   fmt(height - my - (j + 1) * ch) + "\" width=\"" + fmt(cw + 0.5) +
                   "\" height=\"" + fmt(ch + 0.5) + "\" fill=\"rgb(" + c + "," + c +
                   "," + c + ")\"/>\n";
        }
    }
    return out + "</svg>\n";
}

std::string histogram(const std::vector<std::string>& labels,
                      const std::vector<double>& masses, const std::string& title) {
    const int width = 500, height = 400;
    const double mx = 50, my = 40;
    double peak = 0.0;
    for (double m : masses) peak = std::max(peak, m);
    if (peak <= 0) peak = 1.0;
    const double bw = (width - 2 * mx) / masses.size();
    std::string out = header(width, height, title);
    for (std::size_t b = 0; b < masses.size(); ++b) {
        const double h = masses[b] / peak * (height - 2 * my - 20);
        out += "<rect x=\"" + fmt(mx + b * bw + 6) + "\" y=\"" +
               fmt(height - my - h) + "\" width=\"" + fmt(bw - 12) + "\" height=\"" +
               fmt(h) + "\" fill=\"#1f77b4\"/>\n";
        out += "<text x=\"" + fmt(mx + b * bw + bw / 2) + "\" y=\"" +
               fmt(height - my + 16) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">" + labels[b] + " (" + fmt(masses[b]) + ")</text>\n";
    }
    return out + "</svg>\n";
}

} // namespace bohm::svg
