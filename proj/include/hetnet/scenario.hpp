// Network description shared by the analytic and Monte Carlo paths.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hetnet/fading.hpp"

namespace hetnet {

// One base-station class: spatial density and transmit power (linear watts).
struct Tier {
    double lambda = 0.0;
    double power = 0.0;
};

enum class Association { nearest, max_sir };
enum class FormulaMode { corrected, paper_literal };
enum class EstimateMethod { analytic, closed_form, monte_carlo };

std::string to_string(Association a);
std::string to_string(FormulaMode m);
std::string to_string(EstimateMethod m);

struct Scenario {
    Tier macro{4.0, 19.952623149688797};   // 43 dBm
    Tier small{50.0, 0.19952623149688797};  // 23 dBm
    double eta = 4.0;                       // path-loss exponent, > 2
    double sir_threshold = 3.1622776601683795;  // linear (5 dB)
    double p_serve = 0.25;                  // scheduling probability
    FadingModel fading_desired = NakagamiLognormal{1.0, 0.0, 0.0};
    FadingModel fading_interferers = NakagamiLognormal{1.0, 0.0, 0.0};
    Association association = Association::nearest;
    FormulaMode formula_mode = FormulaMode::corrected;
};

void validate_scenario(const Scenario& sc);

struct OutageEstimate {
    double value = 0.0;
    EstimateMethod method = EstimateMethod::analytic;
    std::optional<double> ci_halfwidth;  // present iff method == monte_carlo
    std::optional<uint64_t> seed;        // present iff method == monte_carlo
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace hetnet
