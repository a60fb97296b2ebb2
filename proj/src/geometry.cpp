#include "hetnet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hetnet {

PointSet sample_ppp(double lambda, const PppWindow& window, RngStream& rng) {
    if (!(lambda > 0.0)) throw std::invalid_argument("sample_ppp: lambda must be > 0");
    if (!(window.r_max > 0.0)) throw std::invalid_argument("sample_ppp: window radius must be > 0");
    const double mean = lambda * M_PI * window.r_max * window.r_max;
    if (mean > 1e8)
        throw ResourceLimitError("sample_ppp: expected point count exceeds 1e8");

    PointSet set;
    set.lambda = lambda;
    const uint64_t n = rng.poisson(mean);
    set.distances.resize(n);
    for (uint64_t i = 0; i < n; ++i)
        set.distances[i] = window.r_max * std::sqrt(rng.uniform());
    std::sort(set.distances.begin(), set.distances.end());
    return set;
}

double nearest_distance_pdf(double lambda, double r) {
    if (r < 0.0) return 0.0;
    double a = M_PI * lambda * r * r;
    return 2.0 * M_PI * lambda * r * std::exp(-a);
}

double sample_nearest_distance(double lambda, RngStream& rng) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("sample_nearest_distance: lambda must be > 0");
    return std::sqrt(-std::log(rng.uniform_pos()) / (M_PI * lambda));
}

PppWindow default_window(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("default_window: lambda must be > 0");
    // exp(-pi*lambda*r^2) <= 1e-9  <=>  pi*lambda*r^2 >= ln(1e9)
    double r_void = std::sqrt(std::log(1e9) / (M_PI * lambda));
    return {std::max(5.0 / std::sqrt(lambda), r_void)};
}

PppWindow window_for_mean_count(double lambda, double mean_count) {
    double r = std::sqrt(mean_count / (M_PI * lambda));
    return {std::max(r, default_window(lambda).r_max)};
}

}  // namespace hetnet
