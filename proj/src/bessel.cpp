#include "hetnet/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace hetnet {
namespace {

double i0_power_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// exp(-x)*I0(x) by the large-argument expansion; usable for x >= 20.
double i0e_asymptotic(double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next >= term) break;  // divergent tail reached
        term = next;
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

}  // namespace

double bessel_i0_reference(double x) {
    if (x < 0.0) throw std::domain_error("bessel_i0_reference: x must be >= 0");
    if (x > 700.0)
        throw std::domain_error("bessel_i0_reference: overflow range, use bessel_i0_scaled");
    if (x < 20.0) return i0_power_series(x);
    return std::exp(x) * i0e_asymptotic(x);
}

double bessel_i0_scaled(double x) {
    if (x < 0.0) throw std::domain_error("bessel_i0_scaled: x must be >= 0");
    if (x < 20.0) return std::exp(-x) * i0_power_series(x);
    return i0e_asymptotic(x);
}

double BesselSeries::eval(double x) const {
    double s = 0.0;
    for (size_t k = 0; k < alphas.size(); ++k) s += alphas[k] * std::exp(betas[k] * x);
    return s;
}

double BesselSeries::eval_scaled(double x, double extra) const {
    double s = 0.0;
    for (size_t k = 0; k < alphas.size(); ++k)
        s += alphas[k] * std::exp(betas[k] * x + extra);
    return s;
}

namespace {

struct FitGrid {
    std::vector<double> xs;
    std::vector<double> i0;
};

FitGrid make_grid(double x_max) {
    FitGrid g;
    g.xs.push_back(0.0);
    const int n = 240;
    const double lo = std::log(1e-3), hi = std::log(x_max);
    for (int i = 0; i <= n; ++i)
        g.xs.push_back(std::exp(lo + (hi - lo) * i / n));
    g.xs.back() = x_max;
    for (double x : g.xs) g.i0.push_back(bessel_i0_reference(x));
    return g;
}

// Weighted linear least squares for the alphas given fixed betas: minimizes
// sum_j (series(x_j)/I0(x_j) - 1)^2.
std::vector<double> solve_alphas(const FitGrid& g, const std::vector<double>& betas) {
    const int m = static_cast<int>(betas.size());
    std::vector<double> ata(m * m, 0.0), atb(m, 0.0), row(m);
    for (size_t j = 0; j < g.xs.size(); ++j) {
        for (int k = 0; k < m; ++k) row[k] = std::exp(betas[k] * g.xs[j]) / g.i0[j];
        for (int a = 0; a < m; ++a) {
            atb[a] += row[a];
            for (int b = 0; b < m; ++b) ata[a * m + b] += row[a] * row[b];
        }
    }
    for (int a = 0; a < m; ++a) ata[a * m + a] += 1e-13;
    // Gaussian elimination with partial pivoting.
    std::vector<int> piv(m);
    for (int i = 0; i < m; ++i) piv[i] = i;
    for (int c = 0; c < m; ++c) {
        int best = c;
        for (int r = c + 1; r < m; ++r)
            if (std::abs(ata[r * m + c]) > std::abs(ata[best * m + c])) best = r;
        if (best != c) {
            for (int k = 0; k < m; ++k) std::swap(ata[c * m + k], ata[best * m + k]);
            std::swap(atb[c], atb[best]);
        }
        double d = ata[c * m + c];
        if (d == 0.0) d = 1e-30;
        for (int r = c + 1; r < m; ++r) {
            double f = ata[r * m + c] / d;
            for (int k = c; k < m; ++k) ata[r * m + k] -= f * ata[c * m + k];
            atb[r] -= f * atb[c];
        }
    }
    std::vector<double> sol(m, 0.0);
    for (int r = m - 1; r >= 0; --r) {
        double s = atb[r];
        for (int k = r + 1; k < m; ++k) s -= ata[r * m + k] * sol[k];
        sol[r] = s / (ata[r * m + r] == 0.0 ? 1e-30 : ata[r * m + r]);
    }
    return sol;
}

double max_rel_error(const FitGrid& g, const std::vector<double>& betas,
                     const std::vector<double>& alphas) {
    double worst = 0.0;
    for (size_t j = 0; j < g.xs.size(); ++j) {
        double s = 0.0;
        for (size_t k = 0; k < betas.size(); ++k)
            s += alphas[k] * std::exp(betas[k] * g.xs[j]);
        worst = std::max(worst, std::abs(s / g.i0[j] - 1.0));
    }
    return worst;
}

double objective(const FitGrid& g, const std::vector<double>& betas) {
    for (double b : betas)
        if (!(b > -3.0 && b < 1.05)) return 1e6;
    return max_rel_error(g, betas, solve_alphas(g, betas));
}

// Plain Nelder-Mead; dimension is tiny so no frills needed.
std::vector<double> nelder_mead(const FitGrid& g, std::vector<double> start,
                                int max_iter, double* out_val) {
    const int n = static_cast<int>(start.size());
    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += (start[i] != 0.0 ? 0.08 : 0.05);
    for (int i = 0; i <= n; ++i) vals[i] = objective(g, pts[i]);

    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> p2;
        std::vector<double> v2;
        for (int i : idx) {
            p2.push_back(pts[i]);
            v2.push_back(vals[i]);
        }
        pts.swap(p2);
        vals.swap(v2);
    };
    order();

    for (int it = 0; it < max_iter; ++it) {
        if (vals[n] - vals[0] < 1e-13) break;
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
        auto mix = [&](double t) {
            std::vector<double> p(n);
            for (int k = 0; k < n; ++k) p[k] = centroid[k] + t * (pts[n][k] - centroid[k]);
            return p;
        };
        auto refl = mix(-1.0);
        double fr = objective(g, refl);
        if (fr < vals[0]) {
            auto expd = mix(-2.0);
            double fe = objective(g, expd);
            if (fe < fr) {
                pts[n] = expd;
                vals[n] = fe;
            } else {
                pts[n] = refl;
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            pts[n] = refl;
            vals[n] = fr;
        } else {
            auto contr = mix(fr < vals[n] ? -0.5 : 0.5);
            double fc = objective(g, contr);
            if (fc < std::min(fr, vals[n])) {
                pts[n] = contr;
                vals[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int k = 0; k < n; ++k) pts[i][k] = 0.5 * (pts[i][k] + pts[0][k]);
                    vals[i] = objective(g, pts[i]);
                }
            }
        }
        order();
    }
    *out_val = vals[0];
    return pts[0];
}

uint64_t splitmix(uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

BesselSeries fit_bessel_series(int terms, double x_max, double tolerance) {
    if (terms < 1) throw std::invalid_argument("fit_bessel_series: terms must be >= 1");
    if (x_max <= 0.0) throw std::invalid_argument("fit_bessel_series: x_max must be > 0");

    FitGrid grid = make_grid(x_max);

    std::vector<std::vector<double>> starts;
    if (terms == 4) {
        starts.push_back({0.98, 0.80, 0.30, -0.72});
        starts.push_back({0.99, 0.90, 0.60, 0.20});
        starts.push_back({0.95, 0.70, 0.40, 0.05});
        starts.push_back({1.00, 0.85, 0.50, -0.30});
    }
    uint64_t seed = 0x5eed;
    for (int s = 0; s < 12; ++s) {
        std::vector<double> p(terms);
        for (int k = 0; k < terms; ++k)
            p[k] = -0.8 + 1.8 * (splitmix(seed) >> 11) * 0x1.0p-53;
        starts.push_back(std::move(p));
    }

    std::vector<double> best_beta;
    double best_val = 1e9;
    for (auto& s0 : starts) {
        double v;
        auto b = nelder_mead(grid, s0, 2500, &v);
        if (v < best_val) {
            best_val = v;
            best_beta = b;
        }
    }

    BesselSeries out;
    out.betas = best_beta;
    out.alphas = solve_alphas(grid, best_beta);
    out.fit_error = max_rel_error(grid, out.betas, out.alphas);
    out.x_max = x_max;
    // canonical order: descending beta
    std::vector<size_t> idx(out.betas.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return out.betas[a] > out.betas[b]; });
    BesselSeries sorted = out;
    for (size_t i = 0; i < idx.size(); ++i) {
        sorted.alphas[i] = out.alphas[idx[i]];
        sorted.betas[i] = out.betas[idx[i]];
    }
    if (sorted.fit_error > tolerance) {
        std::ostringstream msg;
        msg << "fit_bessel_series: achieved max relative error " << sorted.fit_error
            << " exceeds tolerance " << tolerance;
        throw FitError(msg.str(), sorted.fit_error);
    }
    return sorted;
}

const BesselSeries& builtin_bessel_series() {
    static const BesselSeries s = [] {
        BesselSeries b;
        b.name = "i0-exp-series";
        // Frozen output of fit_bessel_series(4, 20.0); see data/bessel_i0_series.txt.
        b.alphas = {0.12827060722412986, 0.45520580160668337,
                    0.25748723434893900, 0.15894131686128694};
        b.betas = {0.98040505453659461, 0.80299031764219558,
                   0.29943436628904192, -0.71970568944615030};
        b.fit_error = 0.00030017791321780866;
        b.x_max = 20.0;
        return b;
    }();
    return s;
}

void save_bessel_series(std::ostream& os, const BesselSeries& s) {
    os << "bessel-series-v1\n";
    os << "name " << s.name << "\n";
    os << "terms " << s.alphas.size() << "\n";
    os << "x_max ";
    os.precision(17);
    os << s.x_max << "\n";
    os << "fit_error " << s.fit_error << "\n";
    os << "alphas";
    for (double a : s.alphas) os << " " << a;
    os << "\nbetas";
    for (double b : s.betas) os << " " << b;
    os << "\n";
}

BesselSeries load_bessel_series(std::istream& is) {
    std::string line;
    std::getline(is, line);
    if (line != "bessel-series-v1")
        throw std::runtime_error("load_bessel_series: unknown format header");
    BesselSeries s;
    size_t terms = 0;
    std::string key;
    while (is >> key) {
        if (key == "name") {
            is >> s.name;
        } else if (key == "terms") {
            is >> terms;
        } else if (key == "x_max") {
            is >> s.x_max;
        } else if (key == "fit_error") {
            is >> s.fit_error;
        } else if (key == "alphas") {
            s.alphas.resize(terms);
            for (auto& v : s.alphas) is >> v;
        } else if (key == "betas") {
            s.betas.resize(terms);
            for (auto& v : s.betas) is >> v;
        } else {
            throw std::runtime_error("load_bessel_series: unexpected key " + key);
        }
    }
    if (s.alphas.size() != terms || s.betas.size() != terms || terms == 0)
        throw std::runtime_error("load_bessel_series: incomplete series");
    return s;
}

}  // namespace hetnet
