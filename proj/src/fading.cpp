#include "hetnet/fading.hpp"

#include <cmath>

namespace hetnet {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double pochhammer(double m, int k) {
    double p = 1.0;
    for (int j = 0; j < k; ++j) p *= m + j;
    return p;
}

// --- Nakagami-lognormal -----------------------------------------------------

double naklog_pdf_exact(double m, double mu, double zeta, double h) {
    const double pre = std::pow(m, m) * std::pow(h, m - 1.0) / std::tgamma(m);
    if (zeta == 0.0) return pre * std::exp(-m * mu) * std::exp(-m * h * std::exp(-mu));
    const double s2z = std::sqrt(2.0) * zeta;
    auto integrand = [&](double t) {
        double e = s2z * t + mu;
        return std::exp(-t * t - m * h * std::exp(-e) - m * e);
    };
    // For h near zero the integrand peaks at t = -m*s2z/2 before the double
    // exponential takes over; widen the left end accordingly.
    const double lo = -(0.5 * m * s2z + 9.0), hi = 9.0;
    return pre / kSqrtPi * integrate_finite(integrand, lo, hi, 1e-10).value;
}

double naklog_pdf_approx(double m, double mu, double zeta, double h,
                         const PairedHermite& pairs) {
    const double pre = std::pow(m, m) * std::pow(h, m - 1.0) / std::tgamma(m);
    double sum = 0.0;
    for (size_t i = 0; i < pairs.alphas.size(); ++i) {
        double a = std::exp(-(pairs.betas[i] * zeta + mu));   // 1/sigma at node +t
        double b = std::exp(pairs.betas[i] * zeta - mu);      // 1/sigma at node -t
        sum += pairs.alphas[i] *
               (std::exp(-m * h * a) * std::pow(a, m) + std::exp(-m * h * b) * std::pow(b, m));
    }
    return pre * sum;
}

double naklog_moment(double m, double mu, double zeta, double x, int k,
                     const PairedHermite& pairs) {
    const double ratio = pochhammer(m, k);
    if (zeta == 0.0) {
        double sig = std::exp(mu);
        return ratio * std::pow(sig / m, k) * std::pow(1.0 + x * sig / m, -(m + k));
    }
    double sum = 0.0;
    for (size_t i = 0; i < pairs.alphas.size(); ++i) {
        double sp = std::exp(pairs.betas[i] * zeta + mu);
        double sm = std::exp(-pairs.betas[i] * zeta + mu);
        sum += pairs.alphas[i] *
               (std::pow(sp / m, k) * std::pow(1.0 + x * sp / m, -(m + k)) +
                std::pow(sm / m, k) * std::pow(1.0 + x * sm / m, -(m + k)));
    }
    return ratio * sum;
}

// --- Rician ------------------------------------------------------------------

double rician_pdf_exact(const RicianPower& r, double h) {
    const double rate = (r.K + 1.0) / r.Theta;
    const double arg = 2.0 * std::sqrt(r.K * (r.K + 1.0) * h / r.Theta);
    return rate * std::exp(-r.K - rate * h + arg) * bessel_i0_scaled(arg);
}

double rician_pdf_approx(const RicianPower& r, double h, const BesselSeries& series) {
    const double rate = (r.K + 1.0) / r.Theta;
    const double arg = 2.0 * std::sqrt(r.K * (r.K + 1.0) * h / r.Theta);
    return rate * series.eval_scaled(arg, -r.K - rate * h);
}

double rician_laplace(const RicianPower& r, double x) {
    const double d = 1.0 + r.K + x * r.Theta;
    return (1.0 + r.K) / d * std::exp(-r.K * x * r.Theta / d);
}

// E[h^k exp(-x h)] via the Poisson(K) mixture of Gamma(n+1) components.
double rician_moment(const RicianPower& r, double x, int k) {
    const double theta = r.Theta / (1.0 + r.K);
    const double base = 1.0 / (1.0 + x * theta);
    double w = std::exp(-r.K);  // Poisson weight at n
    double acc = 0.0;
    for (int n = 0; n < 500; ++n) {
        double term = w * pochhammer(n + 1.0, k) * std::pow(theta, k) *
                      std::pow(base, n + 1.0 + k);
        acc += term;
        if (n > r.K + 10.0 && term < 1e-17 * acc) break;
        w *= r.K / (n + 1.0);
    }
    return acc;
}

}  // namespace

void validate_model(const FadingModel& model) {
    std::visit(
        overloaded{
            [](const NakagamiLognormal& n) {
                if (!(n.m >= 0.5) || !std::isfinite(n.m))
                    throw std::invalid_argument("NakagamiLognormal: m must be >= 0.5");
                if (!(n.zeta_dB >= 0.0))
                    throw std::invalid_argument("NakagamiLognormal: zeta_dB must be >= 0");
                if (!std::isfinite(n.mu_dB))
                    throw std::invalid_argument("NakagamiLognormal: mu_dB must be finite");
            },
            [](const RicianPower& r) {
                if (!(r.K >= 0.0)) throw std::invalid_argument("RicianPower: K must be >= 0");
                if (!(r.Theta > 0.0))
                    throw std::invalid_argument("RicianPower: Theta must be > 0");
            },
            [](const RayleighLognormal& r) {
                if (!(r.zeta_dB >= 0.0))
                    throw std::invalid_argument("RayleighLognormal: zeta_dB must be >= 0");
                if (!std::isfinite(r.mu_dB))
                    throw std::invalid_argument("RayleighLognormal: mu_dB must be finite");
            },
            [](const TimeShared& t) {
                if (!(t.T >= 0.0 && t.T <= 1.0))
                    throw std::invalid_argument("TimeShared: T must be in [0, 1]");
                validate_model(FadingModel{t.rician});
                validate_model(FadingModel{t.shadowed});
            }},
        model);
}

FadingContext FadingContext::make(int pdf_order, int pdf_drop_pairs, int laplace_order) {
    FadingContext ctx;
    ctx.pdf_pairs = paired_form(gauss_hermite(pdf_order), pdf_drop_pairs);
    ctx.laplace_pairs = paired_form(gauss_hermite(laplace_order), 0);
    ctx.series = builtin_bessel_series();
    return ctx;
}

const FadingContext& FadingContext::standard() {
    static const FadingContext ctx = make();
    return ctx;
}

double pdf_power(const FadingModel& model, double h, PdfMethod method,
                 const FadingContext& ctx) {
    if (h < 0.0) throw std::domain_error("pdf_power: h must be >= 0");
    return std::visit(
        overloaded{
            [&](const NakagamiLognormal& n) {
                return method == PdfMethod::exact
                           ? naklog_pdf_exact(n.m, n.mu(), n.zeta(), h)
                           : naklog_pdf_approx(n.m, n.mu(), n.zeta(), h, ctx.pdf_pairs);
            },
            [&](const RicianPower& r) {
                return method == PdfMethod::exact ? rician_pdf_exact(r, h)
                                                  : rician_pdf_approx(r, h, ctx.series);
            },
            [&](const RayleighLognormal& r) {
                return method == PdfMethod::exact
                           ? naklog_pdf_exact(1.0, r.mu(), r.zeta(), h)
                           : naklog_pdf_approx(1.0, r.mu(), r.zeta(), h, ctx.pdf_pairs);
            },
            [&](const TimeShared& t) {
                return (1.0 - t.T) * pdf_power(FadingModel{t.rician}, h, method, ctx) +
                       t.T * pdf_power(FadingModel{t.shadowed}, h, method, ctx);
            }},
        model);
}

double laplace_power_moment(const FadingModel& model, double x, int k,
                            const FadingContext& ctx) {
    if (x < 0.0) throw std::domain_error("laplace_power_moment: x must be >= 0");
    if (k < 0) throw std::invalid_argument("laplace_power_moment: k must be >= 0");
    return std::visit(
        overloaded{
            [&](const NakagamiLognormal& n) {
                return naklog_moment(n.m, n.mu(), n.zeta(), x, k, ctx.laplace_pairs);
            },
            [&](const RicianPower& r) {
                return k == 0 ? rician_laplace(r, x) : rician_moment(r, x, k);
            },
            [&](const RayleighLognormal& r) {
                return naklog_moment(1.0, r.mu(), r.zeta(), x, k, ctx.laplace_pairs);
            },
            [&](const TimeShared& t) {
                return (1.0 - t.T) * laplace_power_moment(FadingModel{t.rician}, x, k, ctx) +
                       t.T * laplace_power_moment(FadingModel{t.shadowed}, x, k, ctx);
            }},
        model);
}

double laplace_power(const FadingModel& model, double x, const FadingContext& ctx) {
    return laplace_power_moment(model, x, 0, ctx);
}

double mean_power(const FadingModel& model) {
    return std::visit(
        overloaded{
            [](const NakagamiLognormal& n) {
                return std::exp(n.mu() + 0.5 * n.zeta() * n.zeta());
            },
            [](const RicianPower& r) { return r.Theta; },
            [](const RayleighLognormal& r) {
                return std::exp(r.mu() + 0.5 * r.zeta() * r.zeta());
            },
            [](const TimeShared& t) {
                return (1.0 - t.T) * mean_power(FadingModel{t.rician}) +
                       t.T * mean_power(FadingModel{t.shadowed});
            }},
        model);
}

double sample_power(const FadingModel& model, RngStream& rng) {
    return std::visit(
        overloaded{
            [&](const NakagamiLognormal& n) {
                double sigma = std::exp(n.mu() + n.zeta() * rng.normal());
                return rng.gamma(n.m, sigma / n.m);
            },
            [&](const RicianPower& r) {
                double psi = std::sqrt(r.psi2());
                double x = std::sqrt(r.gamma2()) + psi * rng.normal();
                double y = psi * rng.normal();
                return x * x + y * y;
            },
            [&](const RayleighLognormal& r) {
                double sigma = std::exp(r.mu() + r.zeta() * rng.normal());
                return sigma * rng.exponential();
            },
            [&](const TimeShared& t) {
                bool shadowed = rng.uniform() < t.T;
                return shadowed ? sample_power(FadingModel{t.shadowed}, rng)
                                : sample_power(FadingModel{t.rician}, rng);
            }},
        model);
}

}  // namespace hetnet
