// End-to-end network simulator: samples PPP tiers and fading, computes the
// tagged-user SIR under both link modes and both association rules, and
// estimates outage with confidence intervals. Independent of the analytic
// module; serves as its oracle.
#pragma once

#include <string>

#include "hetnet/geometry.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

enum class LinkMode { direct, offload };

struct SimConfig {
    Scenario scenario;
    uint64_t trials = 100000;
    uint64_t master_seed = 1;
    PppWindow window;   // truncation for the simulated tier
    int workers = 0;    // 0 = hardware concurrency
    double ci_z = 1.96; // normal quantile for the Wilson interval
};

// Sizes the window from a first-order bound on the outage bias caused by
// ignoring interferers beyond it (default target 1e-4 absolute), floored at
// the void-probability window.
SimConfig make_sim_config(const Scenario& sc, LinkMode mode, uint64_t trials,
                          uint64_t master_seed, int workers = 0,
                          double trunc_bias_target = 1e-4);

struct SimResult {
    OutageEstimate outage;             // method = monte_carlo, ci and seed set
    double success_conditional = 0.0;  // successes / trials, before p_serve
    uint64_t trials_used = 0;
    double wall_time_s = 0.0;
    double ci_success = 0.0;                 // Wilson halfwidth, success scale
    double zero_interference_fraction = 0.0;  // trials with an empty interferer set
    uint64_t empty_resamples = 0;             // realizations redrawn for lack of points
};

SimResult simulate_direct(const SimConfig& cfg);
SimResult simulate_offload(const SimConfig& cfg);

struct ValidationReport {
    bool analytic_available = false;
    double analytic_value = 0.0;
    std::string analytic_method;
    SimResult mc;
    double abs_gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

// Runs both estimators and compares at |gap| <= max(3*CI halfwidth, 0.005).
ValidationReport validate(const Scenario& sc, uint64_t trials, uint64_t seed,
                          LinkMode mode = LinkMode::direct, int workers = 0);

// Wilson score interval halfwidth for `successes` out of `trials`.
double wilson_halfwidth(uint64_t successes, uint64_t trials, double z);

}  // namespace hetnet
