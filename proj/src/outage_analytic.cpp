#include "hetnet/outage_analytic.hpp"

#include <cmath>
#include <vector>

namespace hetnet {
namespace {

constexpr double kInnerRelTol = 1e-9;
constexpr double kOuterRelTol = 1e-9;

std::string describe(const FadingModel& m) {
    struct V {
        std::string operator()(const NakagamiLognormal& n) const {
            return "nakagami_lognormal(m=" + std::to_string(n.m) + ")";
        }
        std::string operator()(const RicianPower& r) const {
            return "rician(K=" + std::to_string(r.K) + ")";
        }
        std::string operator()(const RayleighLognormal&) const { return "rayleigh_lognormal"; }
        std::string operator()(const TimeShared& t) const {
            return "time_shared(T=" + std::to_string(t.T) + ")";
        }
    };
    return std::visit(V{}, m);
}

// ---- desired-fading classification ------------------------------------------
//
// The conditional success probability is computed for gamma-distributed
// desired power: shape m (integer), scale sigma/m, mixed over sigma. The
// lognormal shadowing mixture uses the paired Gauss-Hermite nodes with
// weights renormalized to sum to one.
struct DesiredGamma {
    int m = 1;
    std::vector<std::pair<double, double>> nodes;  // (weight, sigma)
};

DesiredGamma classify_desired(const FadingModel& model, const FadingContext& ctx) {
    struct V {
        const FadingContext& ctx;
        DesiredGamma operator()(const NakagamiLognormal& n) const {
            double mr = std::round(n.m);
            if (std::abs(n.m - mr) > 1e-9 || mr < 1.0 || mr > 16.0)
                throw UnsupportedCombination(
                    "analytic outage requires integer Nakagami shape 1..16 on the desired "
                    "link (got m=" + std::to_string(n.m) + "); use the simulator instead");
            DesiredGamma d;
            d.m = static_cast<int>(mr);
            if (n.zeta() == 0.0) {
                d.nodes.emplace_back(1.0, std::exp(n.mu()));
            } else {
                double wsum = 0.0;
                for (double a : ctx.pdf_pairs.alphas) wsum += 2.0 * a;
                for (size_t i = 0; i < ctx.pdf_pairs.alphas.size(); ++i) {
                    double w = ctx.pdf_pairs.alphas[i] / wsum;
                    double bz = ctx.pdf_pairs.betas[i] * n.zeta();
                    d.nodes.emplace_back(w, std::exp(n.mu() + bz));
                    d.nodes.emplace_back(w, std::exp(n.mu() - bz));
                }
            }
            return d;
        }
        DesiredGamma operator()(const RayleighLognormal& r) const {
            return (*this)(NakagamiLognormal{1.0, r.mu_dB, r.zeta_dB});
        }
        DesiredGamma operator()(const RicianPower& r) const {
            if (r.K != 0.0)
                throw UnsupportedCombination(
                    "analytic outage does not cover Rician desired fading with K>0; use "
                    "the simulator instead");
            DesiredGamma d;
            d.m = 1;
            d.nodes.emplace_back(1.0, r.Theta);
            return d;
        }
        DesiredGamma operator()(const TimeShared& t) const {
            if (t.T == 0.0) return (*this)(t.rician);
            if (t.T == 1.0) return (*this)(t.shadowed);
            throw UnsupportedCombination(
                "analytic outage does not cover time-shared desired fading with "
                "0 < T < 1; use the simulator instead");
        }
    };
    return std::visit(V{ctx}, model);
}

// ---- dimensionless interferer integrals --------------------------------------
//
// With serving distance r and threshold rate x0 = m*mu/sigma, the exclusion
// integral reduces, via w = (u/r)^2, to v * ghat_k(x0) with v = pi*lambda*r^2:
//   ghat_0 = integral_1^inf (1 - E[exp(-x0 w^-eta/2 h)]) dw
//   ghat_k = x0^k integral_1^inf w^(-k eta/2) E[h^k exp(-x0 w^-eta/2 h)] dw
// Nothing here depends on the density, which is what makes the corrected-mode
// outage density-invariant.
double ghat(const FadingModel& intf, double x0, int k, double eta,
            const FadingContext& ctx) {
    if (x0 == 0.0) return 0.0;
    const double p = 0.5 * eta;
    if (k == 0) {
        auto f = [&](double w) {
            return 1.0 - laplace_power_moment(intf, x0 * std::pow(w, -p), 0, ctx);
        };
        return integrate_semi_infinite(f, 1.0, kInnerRelTol);
    }
    auto f = [&](double w) {
        return std::pow(w, -k * p) *
               laplace_power_moment(intf, x0 * std::pow(w, -p), k, ctx);
    };
    return std::pow(x0, k) * integrate_semi_infinite(f, 1.0, kInnerRelTol);
}

// Complete Bell polynomial values B_0..B_{n} from a_1..a_n.
void bell_polynomials(const std::vector<double>& a, std::vector<double>& B) {
    const int n = static_cast<int>(a.size());
    B.assign(n + 1, 0.0);
    B[0] = 1.0;
    for (int next = 1; next <= n; ++next) {
        double s = 0.0;
        double binom = 1.0;  // C(next-1, i)
        for (int i = 0; i < next; ++i) {
            s += binom * B[i] * a[next - 1 - i];
            binom = binom * (next - 1 - i) / (i + 1.0);
        }
        B[next] = s;
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Success probability of the nearest-point link, corrected mode. Fully
// dimensionless: the density cancels exactly.
double success_nearest_corrected(double mu, double eta, const FadingModel& desired,
                                 const FadingModel& interferers,
                                 const FadingContext& ctx) {
    DesiredGamma des = classify_desired(desired, ctx);

    struct Component {
        double weight;
        double g0;
        std::vector<double> gk;  // ghat_1..ghat_{m-1}
    };
    std::vector<Component> comps;
    comps.reserve(des.nodes.size());
    for (auto& [w, sigma] : des.nodes) {
        Component c;
        c.weight = w;
        double x0 = des.m * mu / sigma;
        c.g0 = ghat(interferers, x0, 0, eta, ctx);
        for (int k = 1; k < des.m; ++k)
            c.gk.push_back(ghat(interferers, x0, k, eta, ctx));
        comps.push_back(std::move(c));
    }

    std::vector<double> a, B;
    auto S = [&](double v) {
        double total = 0.0;
        for (const auto& c : comps) {
            double poly = 1.0;
            if (!c.gk.empty()) {
                a.resize(c.gk.size());
                for (size_t k = 0; k < c.gk.size(); ++k) a[k] = v * c.gk[k];
                bell_polynomials(a, B);
                poly = 0.0;
                for (int j = 0; j < des.m; ++j) poly += B[j] / factorial(j);
            }
            total += c.weight * std::exp(-v * c.g0) * poly;
        }
        return total;
    };
    return integrate_semi_infinite([&](double v) { return std::exp(-v) * S(v); }, 0.0,
                                   kOuterRelTol);
}

bool is_unit_mean_rayleigh(const FadingModel& model) {
    struct V {
        bool operator()(const NakagamiLognormal& n) const {
            return std::abs(n.m - 1.0) < 1e-12 && n.zeta_dB == 0.0 &&
                   std::abs(n.mu_dB) < 1e-12;
        }
        bool operator()(const RayleighLognormal& r) const {
            return r.zeta_dB == 0.0 && std::abs(r.mu_dB) < 1e-12;
        }
        bool operator()(const RicianPower& r) const {
            return r.K == 0.0 && std::abs(r.Theta - 1.0) < 1e-12;
        }
        bool operator()(const TimeShared& t) const {
            if (t.T == 0.0) return (*this)(t.rician);
            if (t.T == 1.0) return (*this)(t.shadowed);
            return false;
        }
    };
    return std::visit(V{}, model);
}

double success_paper_literal(double mu, double lambda) {
    const double smu = std::sqrt(mu);
    const double pil = M_PI * lambda;
    auto f = [&](double v) {
        return std::exp(-v * (1.0 + smu * std::atan(std::sqrt(mu * v / pil))));
    };
    return integrate_semi_infinite(f, 0.0, kOuterRelTol);
}

OutageEstimate outage_nearest(const Scenario& sc, const Tier& tier,
                              const FadingContext& ctx) {
    validate_scenario(sc);
    if (sc.association != Association::nearest)
        throw UnsupportedCombination(
            "analytic outage supports nearest association only; use the simulator for "
            "max_sir");
    OutageEstimate est;
    if (sc.formula_mode == FormulaMode::paper_literal) {
        if (sc.eta != 4.0 || !is_unit_mean_rayleigh(sc.fading_desired) ||
            !is_unit_mean_rayleigh(sc.fading_interferers))
            throw UnsupportedCombination(
                "paper_literal mode is defined only for unit-mean Rayleigh fading with "
                "eta=4 (desired " + describe(sc.fading_desired) + ", interferers " +
                describe(sc.fading_interferers) + "); use corrected mode or the simulator");
        est.value = 1.0 - sc.p_serve * success_paper_literal(sc.sir_threshold, tier.lambda);
        est.method = EstimateMethod::closed_form;
        return est;
    }
    double s = success_nearest_corrected(sc.sir_threshold, sc.eta, sc.fading_desired,
                                         sc.fading_interferers, ctx);
    est.value = 1.0 - sc.p_serve * s;
    est.method = EstimateMethod::analytic;
    return est;
}

}  // namespace

std::string to_string(Association a) {
    return a == Association::nearest ? "nearest" : "max_sir";
}
std::string to_string(FormulaMode m) {
    return m == FormulaMode::corrected ? "corrected" : "paper_literal";
}
std::string to_string(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::analytic: return "analytic";
        case EstimateMethod::closed_form: return "closed_form";
        default: return "monte_carlo";
    }
}

void validate_scenario(const Scenario& sc) {
    if (!(sc.eta > 2.0)) throw std::invalid_argument("scenario: eta must be > 2");
    if (!(sc.sir_threshold > 0.0))
        throw std::invalid_argument("scenario: SIR threshold must be > 0");
    if (!(sc.p_serve > 0.0 && sc.p_serve <= 1.0))
        throw std::invalid_argument("scenario: p_serve must be in (0, 1]");
    if (!(sc.macro.lambda > 0.0) || !(sc.small.lambda > 0.0))
        throw std::invalid_argument("scenario: tier densities must be > 0");
    if (!(sc.macro.power > 0.0) || !(sc.small.power > 0.0))
        throw std::invalid_argument("scenario: tier powers must be > 0");
    validate_model(sc.fading_desired);
    validate_model(sc.fading_interferers);
}

double laplace_interference(double s, const Tier& tier, double eta,
                            double exclusion_radius, const FadingModel& model,
                            const FadingContext& ctx) {
    if (s < 0.0) throw std::domain_error("laplace_interference: s must be >= 0");
    if (exclusion_radius < 0.0)
        throw std::domain_error("laplace_interference: exclusion radius must be >= 0");
    if (s == 0.0 || tier.lambda == 0.0) return 1.0;

    double exponent;
    const double p = 0.5 * eta;
    if (exclusion_radius > 0.0) {
        const double r0 = exclusion_radius;
        const double x0 = s * tier.power * std::pow(r0, -eta);
        auto f = [&](double w) {
            return 1.0 - laplace_power(model, x0 * std::pow(w, -p), ctx);
        };
        exponent = M_PI * tier.lambda * r0 * r0 *
                   integrate_semi_infinite(f, 1.0, kInnerRelTol);
    } else {
        auto f = [&](double u) {
            return (1.0 - laplace_power(model, s * tier.power * std::pow(u, -eta), ctx)) * u;
        };
        exponent = 2.0 * M_PI * tier.lambda * integrate_semi_infinite(f, 0.0, kInnerRelTol);
    }
    return std::exp(-exponent);
}

double rayleigh_success_exponent(double mu, double eta) {
    if (!(mu > 0.0)) return 0.0;
    if (eta == 4.0) {
        double smu = std::sqrt(mu);
        return smu * std::atan(smu);
    }
    const double p = 0.5 * eta;
    auto f = [&](double w) { return mu / (std::pow(w, p) + mu); };
    return integrate_semi_infinite(f, 1.0, kInnerRelTol);
}

double closed_form_success(double mu_linear, FormulaMode mode, double lambda) {
    if (!(mu_linear > 0.0))
        throw std::invalid_argument("closed_form_success: mu must be > 0");
    if (mode == FormulaMode::corrected) {
        double smu = std::sqrt(mu_linear);
        return 1.0 / (1.0 + smu * std::atan(smu));
    }
    return success_paper_literal(mu_linear, lambda);
}

OutageEstimate outage_direct(const Scenario& sc, const FadingContext& ctx) {
    return outage_nearest(sc, sc.macro, ctx);
}

OutageEstimate outage_offload(const Scenario& sc, const FadingContext& ctx) {
    return outage_nearest(sc, sc.small, ctx);
}

bool analytic_supported(const Scenario& sc) {
    try {
        if (sc.association != Association::nearest) return false;
        if (sc.formula_mode == FormulaMode::paper_literal)
            return sc.eta == 4.0 && is_unit_mean_rayleigh(sc.fading_desired) &&
                   is_unit_mean_rayleigh(sc.fading_interferers);
        classify_desired(sc.fading_desired, FadingContext::standard());
        return true;
    } catch (const UnsupportedCombination&) {
        return false;
    }
}

}  // namespace hetnet
