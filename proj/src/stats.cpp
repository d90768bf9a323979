#include "bohm/stats.hpp"

#include <algorithm>

namespace bohm {

double ks_distance(std::vector<double> samples, const PiecewiseLinearCdf& reference) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = reference(samples[i]);
        const double di = static_cast<double>(i);
        d = std::max(d, std::max((di + 1.0) / n - f, f - di / n));
    }
    return d;
}

} // namespace bohm
