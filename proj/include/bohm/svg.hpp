#ifndef BOHM_SVG_HPP
#define BOHM_SVG_HPP

#include <string>
#include <vector>

namespace bohm::svg {

/// One polyline per series in data coordinates; axes are fit to the data.
std::string line_plot(const std::vector<std::vector<std::pair<double, double>>>& series,
                      const std::string& title, int width = 900, int height = 500);

/// Grayscale cell map of a row-major value grid (ny fast axis). Grids larger
/// than max_cells per side are downsampled by averaging.
std::string heat_map(const std::vector<double>& values, int nx, int ny,
                     double x0, double x1, double y0, double y1,
                     const std::string& title, int max_cells = 128);

std::string histogram(const std::vector<std::string>& labels,
                      const std::vector<double>& masses, const std::string& title);

} // namespace bohm::svg

#endif
