// Planar PPP machinery: point sampling within a disk window, nearest-point
// distance law, window sizing rules.
#pragma once

#include <stdexcept>
#include <vector>

#include "hetnet/rng.hpp"

namespace hetnet {

// Finite truncation of the plane: a disk of radius r_max around the origin.
struct PppWindow {
    double r_max = 0.0;
};

// One realization: distances from the origin, sorted ascending. Angles are
// never stored; with the tagged user at the origin, isotropic path loss and
// i.i.d. fading nothing downstream depends on them.
struct PointSet {
    std::vector<double> distances;
    double lambda = 0.0;
};

class ResourceLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Homogeneous PPP of intensity `lambda` on the window. Throws
// ResourceLimitError when the expected count exceeds 1e8.
PointSet sample_ppp(double lambda, const PppWindow& window, RngStream& rng);

// Density of the distance to the nearest point: 2*pi*lambda*r*exp(-pi*lambda*r^2).
double nearest_distance_pdf(double lambda, double r);

// Inverse-CDF draw from the nearest-distance law.
double sample_nearest_distance(double lambda, RngStream& rng);

// Smallest window radius with void probability <= 1e-9, floored at 5/sqrt(lambda).
PppWindow default_window(double lambda);

// Window holding `mean_count` expected points (floored at default_window).
PppWindow window_for_mean_count(double lambda, double mean_count);

}  // namespace hetnet
