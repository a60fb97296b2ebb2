// Gauss-Hermite rules and adaptive one-dimensional integration.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetnet {

// Nodes/weights for integrals of the form  integral exp(-t^2) f(t) dt  over the
// whole real line. Nodes are symmetric about zero and strictly increasing;
// weights sum to sqrt(pi).
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Computed via the symmetric-tridiagonal (Golub-Welsch) eigenvalue method.
// Supported orders: 2..64. Throws std::invalid_argument outside that range.
QuadratureRule gauss_hermite(int order);

// Positive-node half of an even-order rule, expressed as (alpha, beta) pairs
// with alpha_i = W_i/sqrt(pi) and beta_i = sqrt(2)*t_i, sorted by descending
// beta. The `drop_pairs` outermost pairs are discarded.
struct PairedHermite {
    std::vector<double> alphas;
    std::vector<double> betas;
    int dropped_pairs = 0;
};

PairedHermite paired_form(const QuadratureRule& rule, int drop_pairs);

// Thrown when the adaptive integrator exhausts its subdivision budget. Carries
// the best estimate obtained so far and a bound on its absolute error.
class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
    double best_estimate;
    double error_bound;
};

struct IntegrationResult {
    double value = 0.0;
    double error_bound = 0.0;  // estimated upper bound on absolute error
    int panels = 0;
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.
IntegrationResult integrate_finite(const std::function<double(double)>& f,
                                   double a, double b, double rel_tol = 1e-8,
                                   int max_panels = 4096);

// Integral of f over [lower, inf), mapped to a finite interval with the
// rational substitution x = lower + t/(1-t). f must be absolutely integrable.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double lower, double rel_tol = 1e-8);

IntegrationResult integrate_semi_infinite_full(const std::function<double(double)>& f,
                                               double lower, double rel_tol = 1e-8,
                                               int max_panels = 4096);

}  // namespace hetnet
