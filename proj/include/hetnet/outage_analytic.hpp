// Analytic outage probability for the direct and offloaded links:
// PGFL-based interference Laplace transform, the eta=4 closed forms in both
// the legacy and the corrected variant, and the generic composite-fading
// pipeline (gamma tail as a finite sum of Laplace-transform derivatives).
#pragma once

#include "hetnet/fading.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

// Raised when a scenario has no analytic path (the Monte Carlo module covers
// those cases); never silently approximated.
class UnsupportedCombination : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Laplace transform of the cumulative interference from one tier, all points
// beyond `exclusion_radius` interfering:
//   exp(-2*pi*lambda * integral_{r0}^{inf} (1 - E[exp(-s*P*h*r^-eta)]) r dr)
double laplace_interference(double s, const Tier& tier, double eta,
                            double exclusion_radius, const FadingModel& model,
                            const FadingContext& ctx = FadingContext::standard());

// Success probability of the nearest-point link under unit-mean exponential
// fading on both sides, eta = 4.
//   corrected:     1 / (1 + sqrt(mu) * atan(sqrt(mu)))          (density-free)
//   paper_literal: the legacy integral that keeps the serving distance inside
//                  the arctangent and is therefore density-dependent
double closed_form_success(double mu_linear, FormulaMode mode, double lambda);

// rho(mu, eta) with S(r) = exp(-pi*lambda*r^2*rho) for unit-mean exponential
// fading; closed form sqrt(mu)*atan(sqrt(mu)) at eta = 4.
double rayleigh_success_exponent(double mu, double eta);

OutageEstimate outage_direct(const Scenario& sc,
                             const FadingContext& ctx = FadingContext::standard());
OutageEstimate outage_offload(const Scenario& sc,
                              const FadingContext& ctx = FadingContext::standard());

// True when the scenario's desired-fading/mode combination has an analytic
// path (nearest association; exponential-class or integer-m gamma desired
// fading; paper_literal additionally requires unit-mean Rayleigh and eta=4).
bool analytic_supported(const Scenario& sc);

}  // namespace hetnet
