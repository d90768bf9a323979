#ifndef BOHM_STATS_HPP
#define BOHM_STATS_HPP

#include <vector>

#include "bohm/sampling.hpp"

namespace bohm {

/// One-sample Kolmogorov-Smirnov distance between samples and a reference CDF.
double ks_distance(std::vector<double> samples, const PiecewiseLinearCdf& reference);

/// Asymptotic one-sample KS critical value at the 1% level, 1.63/sqrt(n).
inline double ks_critical_1pct(std::size_t n) {
    return 1.63 / std::sqrt(static_cast<double>(n));
}

} // namespace bohm

#endif
