// Reference evaluation of the modified Bessel function I0 and its finite
// exponential-series approximation.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetnet {

// I0(x) for 0 <= x <= 700, accurate to at least 10 significant digits
// (power series for small arguments, asymptotic expansion beyond). Arguments
// above 700 overflow a double; use bessel_i0_scaled there.
double bessel_i0_reference(double x);

// exp(-x) * I0(x); valid for any x >= 0.
double bessel_i0_scaled(double x);

// Finite exponential series  I0(x) ~ sum_k alpha_k * exp(beta_k * x),
// fitted on [0, x_max] to minimize the maximum relative error.
struct BesselSeries {
    std::string name = "i0-exp-series";
    std::vector<double> alphas;
    std::vector<double> betas;
    double fit_error = 0.0;  // achieved max relative error on the fit grid
    double x_max = 0.0;

    double eval(double x) const;
    // evaluates exp(extra) * series(x) in a single overflow-safe expression
    double eval_scaled(double x, double extra) const;
};

class FitError : public std::runtime_error {
  public:
    FitError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Least-squares/minimax fit of a `terms`-term exponential series to
// bessel_i0_reference on a log-spaced grid of [0, x_max]. Throws FitError if
// the achieved maximum relative error exceeds `tolerance`.
BesselSeries fit_bessel_series(int terms, double x_max, double tolerance = 0.01);

// Frozen production coefficients (terms = 4, x_max = 20); identical to the
// versioned data file shipped with the project.
const BesselSeries& builtin_bessel_series();

void save_bessel_series(std::ostream& os, const BesselSeries& s);
BesselSeries load_bessel_series(std::istream& is);

}  // namespace hetnet
