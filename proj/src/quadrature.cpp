#include "hetnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace hetnet {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// QL with implicit shifts for a symmetric tridiagonal matrix. Eigenvalues land
// in diag; first[] accumulates the first row of the eigenvector matrix, which
// is all Golub-Welsch needs for the weights.
void tridiag_ql(std::vector<double>& diag, std::vector<double>& sub,
                std::vector<double>& first) {
    const int n = static_cast<int>(diag.size());
    sub.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(sub[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("tridiag_ql: too many iterations");
                double g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + sub[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * sub[i];
                    double b = c * sub[i];
                    r = std::hypot(f, g);
                    sub[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        sub[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                    double fv = first[i + 1];
                    first[i + 1] = s * first[i] + c * fv;
                    first[i] = c * first[i] - s * fv;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                diag[l] -= p;
                sub[l] = g;
                sub[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

QuadratureRule gauss_hermite(int order) {
    if (order < 2 || order > 64)
        throw std::invalid_argument("gauss_hermite: order must be in [2, 64]");

    std::vector<double> diag(order, 0.0), sub(order - 1), first(order, 0.0);
    for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(k / 2.0);
    first[0] = 1.0;
    tridiag_ql(diag, sub, first);

    std::vector<int> idx(order);
    for (int i = 0; i < order; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return diag[a] < diag[b]; });

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = diag[idx[i]];
        rule.weights[i] = kSqrtPi * first[idx[i]] * first[idx[i]];
    }

    // Enforce the exact +/- pair symmetry the eigensolver delivers only to
    // rounding error.
    for (int i = 0; i < order / 2; ++i) {
        int j = order - 1 - i;
        double t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -t;
        rule.nodes[j] = t;
        rule.weights[i] = rule.weights[j] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

PairedHermite paired_form(const QuadratureRule& rule, int drop_pairs) {
    if (rule.order % 2 != 0)
        throw std::invalid_argument("paired_form: rule order must be even");
    const int pairs = rule.order / 2;
    if (drop_pairs < 0 || drop_pairs >= pairs)
        throw std::invalid_argument("paired_form: drop_pairs must be in [0, order/2)");

    PairedHermite out;
    out.dropped_pairs = drop_pairs;
    const int keep = pairs - drop_pairs;
    // Positive nodes occupy the upper half, ascending; emit outermost retained
    // pair first (descending beta).
    for (int i = pairs + keep - 1; i >= pairs; --i) {
        out.alphas.push_back(rule.weights[i] / kSqrtPi);
        out.betas.push_back(std::sqrt(2.0) * rule.nodes[i]);
    }
    return out;
}

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1,1]; the embedded 7-point Gauss
// rule uses the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        double fsum;
        if (j == 7) {
            fsum = f(c);
        } else {
            fsum = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
        }
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    p.error = std::abs((resk - resg) * h);
    if (!std::isfinite(p.value)) p.error = std::numeric_limits<double>::infinity();
    return p;
}

}  // namespace

IntegrationResult integrate_finite(const std::function<double(double)>& f,
                                   double a, double b, double rel_tol,
                                   int max_panels) {
    std::priority_queue<Panel> heap;
    Panel p0 = gk15(f, a, b);
    double total = p0.value, err = p0.error;
    heap.push(p0);
    int panels = 1;
    while (err > rel_tol * std::abs(total) && err > 1e-300) {
        if (panels >= max_panels || !std::isfinite(total)) {
            throw IntegrationError("integrate_finite: subdivision budget exhausted",
                                   total, err);
        }
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval no longer splittable at double precision
            heap.push(worst);
            break;
        }
        Panel l = gk15(f, worst.a, mid);
        Panel r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++panels;
    }
    return {total, err, panels};
}

IntegrationResult integrate_semi_infinite_full(const std::function<double(double)>& f,
                                               double lower, double rel_tol,
                                               int max_panels) {
    auto g = [&f, lower](double t) {
        double om = 1.0 - t;
        double x = lower + t / om;
        return f(x) / (om * om);
    };
    return integrate_finite(g, 0.0, 1.0, rel_tol, max_panels);
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               double lower, double rel_tol) {
    return integrate_semi_infinite_full(f, lower, rel_tol).value;
}

}  // namespace hetnet
