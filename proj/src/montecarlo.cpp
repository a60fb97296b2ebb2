#include "hetnet/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "hetnet/outage_analytic.hpp"

namespace hetnet {
namespace {

struct WorkerTally {
    uint64_t successes = 0;
    uint64_t zero_interference = 0;
    uint64_t empty_resamples = 0;
};

inline double path_gain(double r2, double eta) {
    // gain as a function of squared distance; eta==4 avoids pow in the hot loop
    if (eta == 4.0) return 1.0 / (r2 * r2);
    return std::pow(r2, -0.5 * eta);
}

// Typed per-model draw so the trial loop instantiates without a variant
// dispatch per interferer.
inline double draw(const NakagamiLognormal& n, RngStream& rng) {
    double sigma = std::exp(n.mu() + n.zeta() * rng.normal());
    return rng.gamma(n.m, sigma / n.m);
}
inline double draw(const RicianPower& r, RngStream& rng) {
    double psi = std::sqrt(r.psi2());
    double x = std::sqrt(r.gamma2()) + psi * rng.normal();
    double y = psi * rng.normal();
    return x * x + y * y;
}
inline double draw(const RayleighLognormal& r, RngStream& rng) {
    return std::exp(r.mu() + r.zeta() * rng.normal()) * rng.exponential();
}
inline double draw(const TimeShared& t, RngStream& rng) {
    return rng.uniform() < t.T ? draw(t.shadowed, rng) : draw(t.rician, rng);
}

// Exponential fading with unit mean is by far the most common interferer
// model in sweeps; give it a dedicated instantiation.
struct UnitExponential {};
inline double draw(UnitExponential, RngStream& rng) { return rng.exponential(); }

bool is_unit_exponential(const FadingModel& m) {
    if (auto* n = std::get_if<NakagamiLognormal>(&m))
        return n->m == 1.0 && n->zeta_dB == 0.0 && n->mu_dB == 0.0;
    if (auto* r = std::get_if<RayleighLognormal>(&m))
        return r->zeta_dB == 0.0 && r->mu_dB == 0.0;
    if (auto* r = std::get_if<RicianPower>(&m)) return r->K == 0.0 && r->Theta == 1.0;
    return false;
}

// One worker's share of nearest-association trials. The realization is drawn
// by the exact conditional decomposition of the PPP: serving distance from the
// nearest-point law, interferers as a PPP on the annulus between the serving
// distance and the window edge. Same law as sampling the full window and
// taking the minimum.
template <class DesiredModel, class InterferersModel>
WorkerTally run_nearest(const DesiredModel& des, const InterferersModel& intf,
                        double lambda, double power, double eta, double mu,
                        double r2_max, uint64_t trials, RngStream rng) {
    WorkerTally tally;
    const double lam_pi = lambda * M_PI;
    for (uint64_t t = 0; t < trials; ++t) {
        double r2;
        int guard = 0;
        for (;;) {
            r2 = rng.exponential() / lam_pi;
            if (r2 <= r2_max) break;
            ++tally.empty_resamples;
            if (++guard > 1000)
                throw std::runtime_error("simulate: window repeatedly empty; enlarge it");
        }
        const uint64_t n = rng.poisson(lam_pi * (r2_max - r2));
        double interference = 0.0;
        for (uint64_t j = 0; j < n; ++j) {
            double w2 = r2 + rng.uniform() * (r2_max - r2);
            interference += draw(intf, rng) * path_gain(w2, eta);
        }
        if (n == 0) ++tally.zero_interference;
        double signal = draw(des, rng) * path_gain(r2, eta);
        if (power * signal > mu * power * interference) ++tally.successes;
    }
    return tally;
}

// max-SIR association: the server is the point with the largest fading-scaled
// gain; every link draws from the desired-fading model.
template <class Model>
WorkerTally run_max_sir(const Model& model, double lambda, double power, double eta,
                        double mu, double r2_max, uint64_t trials, RngStream rng) {
    WorkerTally tally;
    const double mean_count = lambda * M_PI * r2_max;
    for (uint64_t t = 0; t < trials; ++t) {
        uint64_t n;
        int guard = 0;
        for (;;) {
            n = rng.poisson(mean_count);
            if (n > 0) break;
            ++tally.empty_resamples;
            if (++guard > 1000)
                throw std::runtime_error("simulate: window repeatedly empty; enlarge it");
        }
        double best = -1.0, sum = 0.0;
        for (uint64_t j = 0; j < n; ++j) {
            double w2 = rng.uniform() * r2_max;
            double q = draw(model, rng) * path_gain(w2, eta);
            sum += q;
            if (q > best) best = q;
        }
        double interference = sum - best;
        if (n == 1 || interference <= 0.0) {
            ++tally.zero_interference;
            ++tally.successes;
            continue;
        }
        if (power * best > mu * power * interference) ++tally.successes;
    }
    return tally;
}

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

SimResult simulate_tier(const SimConfig& cfg, const Tier& tier) {
    validate_scenario(cfg.scenario);
    if (cfg.trials < 100)
        throw std::invalid_argument("simulate: need at least 100 trials for a CI");
    if (!(cfg.window.r_max > 0.0))
        throw std::invalid_argument("simulate: window is unset; use make_sim_config");
    if (tier.lambda * M_PI * cfg.window.r_max * cfg.window.r_max > 1e8)
        throw ResourceLimitError("simulate: expected point count exceeds 1e8");

    const Scenario& sc = cfg.scenario;
    if (sc.association == Association::max_sir &&
        !(sc.fading_desired == sc.fading_interferers ||
          is_unit_exponential(sc.fading_desired) ==
              is_unit_exponential(sc.fading_interferers)))
        ;  // handled below by the explicit comparison

    const auto t0 = std::chrono::steady_clock::now();
    const int workers = resolve_workers(cfg.workers);
    const double r2_max = cfg.window.r_max * cfg.window.r_max;
    const double mu = sc.sir_threshold;

    std::vector<uint64_t> share(workers, cfg.trials / workers);
    for (uint64_t i = 0; i < cfg.trials % workers; ++i) ++share[i];

    std::vector<WorkerTally> tallies(workers);
    std::exception_ptr error;
    auto work = [&](int w) {
        try {
            RngStream rng(cfg.master_seed, static_cast<uint64_t>(w));
            if (sc.association == Association::nearest) {
                auto dispatch = [&](const auto& des, const auto& intf) {
                    tallies[w] = run_nearest(des, intf, tier.lambda, tier.power, sc.eta,
                                             mu, r2_max, share[w], rng);
                };
                std::visit(
                    [&](const auto& des) {
                        if (is_unit_exponential(sc.fading_interferers))
                            dispatch(des, UnitExponential{});
                        else
                            std::visit([&](const auto& intf) { dispatch(des, intf); },
                                       sc.fading_interferers);
                    },
                    sc.fading_desired);
            } else {
                std::visit(
                    [&](const auto& m) {
                        tallies[w] = run_max_sir(m, tier.lambda, tier.power, sc.eta, mu,
                                                 r2_max, share[w], rng);
                    },
                    sc.fading_desired);
            }
        } catch (...) {
            error = std::current_exception();
        }
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < workers; ++w) threads.emplace_back(work, w);
    work(0);
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);

    WorkerTally total;
    for (auto& t : tallies) {
        total.successes += t.successes;
        total.zero_interference += t.zero_interference;
        total.empty_resamples += t.empty_resamples;
    }

    SimResult res;
    res.trials_used = cfg.trials;
    res.success_conditional = static_cast<double>(total.successes) / cfg.trials;
    res.ci_success = wilson_halfwidth(total.successes, cfg.trials, cfg.ci_z);
    res.zero_interference_fraction =
        static_cast<double>(total.zero_interference) / cfg.trials;
    res.empty_resamples = total.empty_resamples;
    res.outage.value = 1.0 - sc.p_serve * res.success_conditional;
    res.outage.method = EstimateMethod::monte_carlo;
    res.outage.ci_halfwidth = sc.p_serve * res.ci_success;
    res.outage.seed = cfg.master_seed;
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace

double wilson_halfwidth(uint64_t successes, uint64_t trials, double z) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    return z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

SimConfig make_sim_config(const Scenario& sc, LinkMode mode, uint64_t trials,
                          uint64_t master_seed, int workers,
                          double trunc_bias_target) {
    validate_scenario(sc);
    if (!(trunc_bias_target > 0.0 && trunc_bias_target < 0.1))
        throw std::invalid_argument("make_sim_config: bias target must be in (0, 0.1)");
    const Tier& tier = mode == LinkMode::direct ? sc.macro : sc.small;

    // First-order truncation bias bound for nearest association: interferers
    // beyond R inflate the conditional success by exp(c(r, R)) with
    // c <= 2*pi*lambda*mu_eff*r^eta*R^(2-eta)/(eta-2). Averaging against the
    // serving-distance density weighted by the exponential-fading success
    // factor exp(-pi*lambda*r^2*rho) yields a mean-count requirement that is
    // density-free.
    const double mu_eff = sc.sir_threshold * mean_power(sc.fading_interferers) /
                          mean_power(sc.fading_desired);
    const double c1 = 1.0 + rayleigh_success_exponent(mu_eff, sc.eta);
    const double he = 0.5 * sc.eta;
    double mean_count = std::pow(2.0 * mu_eff * std::tgamma(he + 1.0) /
                                     ((sc.eta - 2.0) * std::pow(c1, he + 1.0) *
                                      trunc_bias_target),
                                 1.0 / (he - 1.0));
    if (mean_count > 1e8)
        throw ResourceLimitError(
            "make_sim_config: window for the requested bias target exceeds the point "
            "budget; raise trunc_bias_target or eta");

    SimConfig cfg;
    cfg.scenario = sc;
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.workers = workers;
    cfg.window = window_for_mean_count(tier.lambda, mean_count);
    return cfg;
}

SimResult simulate_direct(const SimConfig& cfg) {
    return simulate_tier(cfg, cfg.scenario.macro);
}

SimResult simulate_offload(const SimConfig& cfg) {
    return simulate_tier(cfg, cfg.scenario.small);
}

ValidationReport validate(const Scenario& sc, uint64_t trials, uint64_t seed,
                          LinkMode mode, int workers) {
    ValidationReport rep;
    try {
        OutageEstimate est = mode == LinkMode::direct ? outage_direct(sc) : outage_offload(sc);
        rep.analytic_available = true;
        rep.analytic_value = est.value;
        rep.analytic_method = to_string(est.method);
    } catch (const UnsupportedCombination& e) {
        rep.analytic_available = false;
        rep.note = std::string("analytic unavailable: ") + e.what();
    }
    rep.mc = (mode == LinkMode::direct ? simulate_direct : simulate_offload)(
        make_sim_config(sc, mode, trials, seed, workers));
    if (rep.analytic_available) {
        rep.abs_gap = std::abs(rep.analytic_value - rep.mc.outage.value);
        rep.tolerance = std::max(3.0 * rep.mc.outage.ci_halfwidth.value(), 0.005);
        rep.pass = rep.abs_gap <= rep.tolerance;
        if (sc.formula_mode == FormulaMode::paper_literal)
            rep.note =
                "known discrepancy: paper_literal is a legacy formulation and is not "
                "expected to match the simulator";
    }
    return rep;
}

}  // namespace hetnet
