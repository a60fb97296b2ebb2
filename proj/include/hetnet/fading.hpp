// Channel fading power distributions: exact forms, closed-form
// approximations, Laplace transforms and samplers.
#pragma once

#include <variant>

#include "hetnet/bessel.hpp"
#include "hetnet/quadrature.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

constexpr double kDbToNat = 0.23025850929940457;  // ln(10)/10

// Gamma-distributed multipath power whose local mean is lognormal. Inputs are
// in dB; mu() and zeta() are the natural-log parameters of the lognormal.
struct NakagamiLognormal {
    double m = 1.0;        // shape, >= 0.5
    double mu_dB = 0.0;    // shadowing mean
    double zeta_dB = 0.0;  // shadowing standard deviation, >= 0
    double mu() const { return kDbToNat * mu_dB; }
    double zeta() const { return kDbToNat * zeta_dB; }
};

// Power of a Rician-faded amplitude with specular-to-scatter ratio K and
// total power Theta.
struct RicianPower {
    double K = 0.0;
    double Theta = 1.0;
    double gamma2() const { return K * Theta / (1.0 + K); }  // specular power
    double psi2() const { return Theta / (2.0 * (1.0 + K)); }  // per-component scatter
};

// Exponential power with lognormal mean (the shadowed state).
struct RayleighLognormal {
    double mu_dB = 0.0;
    double zeta_dB = 0.0;
    double mu() const { return kDbToNat * mu_dB; }
    double zeta() const { return kDbToNat * zeta_dB; }
};

// Convex time-share between an unshadowed Rician state and a shadowed
// Rayleigh-lognormal state; T is the fraction of time spent shadowed.
struct TimeShared {
    double T = 0.5;
    RicianPower rician;
    RayleighLognormal shadowed;
};

using FadingModel =
    std::variant<NakagamiLognormal, RicianPower, RayleighLognormal, TimeShared>;

// Throws std::invalid_argument when a parameter is out of range.
void validate_model(const FadingModel& model);

enum class PdfMethod { exact, approx };

// Shared evaluation context: the low-order paired rule drives the closed-form
// PDF approximation (order 10, one dropped pair), the high-order rule drives
// Laplace transforms, and the exponential series approximates I0.
struct FadingContext {
    PairedHermite pdf_pairs;
    PairedHermite laplace_pairs;
    BesselSeries series;

    static FadingContext make(int pdf_order = 10, int pdf_drop_pairs = 1,
                              int laplace_order = 64);
    static const FadingContext& standard();
};

// Density of the fading power at h. `exact` evaluates the defining
// integral/Bessel form numerically; `approx` evaluates the closed-form
// approximation (paired Gauss-Hermite sum or exponential Bessel series).
double pdf_power(const FadingModel& model, double h, PdfMethod method,
                 const FadingContext& ctx = FadingContext::standard());

// E[exp(-x h)]
double laplace_power(const FadingModel& model, double x,
                     const FadingContext& ctx = FadingContext::standard());

// E[h^k exp(-x h)]; k = 0 reduces to laplace_power.
double laplace_power_moment(const FadingModel& model, double x, int k,
                            const FadingContext& ctx = FadingContext::standard());

double mean_power(const FadingModel& model);

// One draw from the exact law.
double sample_power(const FadingModel& model, RngStream& rng);

}  // namespace hetnet
