#include "kh/specfun.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace kh {

double log_gamma(double x) {
    if (!(x > 0)) throw domain_error("log_gamma requires x > 0");
    return std::lgamma(x);
}

double QuadratureRule::weight_integral() const {
    switch (weight_kind) {
        case WeightKind::jacobi:
            return std::exp((alpha + beta + 1) * std::log(2.0) + std::lgamma(alpha + 1) +
                            std::lgamma(beta + 1) - std::lgamma(alpha + beta + 2));
        case WeightKind::gen_laguerre:
            return std::exp(std::lgamma(alpha + 1));
        case WeightKind::legendre:
            return 2.0;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Bessel functions
// ---------------------------------------------------------------------------

namespace {

// Ascending series of j_l; converges for all x, used below the asymptotic cutoff.
template <typename T>
T bessel_j_series(double lambda, T x) {
    T q = -x * x * 0.25;
    T term = T(1.0), sum = T(1.0);
    for (int m = 0; m < 300; ++m) {
        term *= q / ((m + 1.0) * (lambda + m + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
    }
    return sum;
}

// Hankel asymptotic expansion of J_lambda for large positive x, returned as
// the normalized j_lambda.
double bessel_j_asymptotic(double lambda, double x) {
    const double mu = 4.0 * lambda * lambda;
    double p = 1.0, q = 0.0;
    double t = 1.0;
    double prev = std::abs(t);
    for (int j = 1; j < 40; ++j) {
        t *= (mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j * x);
        if (std::abs(t) > prev) break;  // divergent tail of the asymptotic series
        prev = std::abs(t);
        const double signed_t = ((j / 2) % 2 == 0 ? t : -t);
        if (j % 2 == 1)
            q += signed_t;
        else
            p += signed_t;
        if (std::abs(t) < 1e-18) break;
    }
    const double omega = x - lambda * pi / 2.0 - pi / 4.0;
    const double big_j = std::sqrt(2.0 / (pi * x)) * (std::cos(omega) * p - std::sin(omega) * q);
    // j_l = Gamma(l+1) (x/2)^{-l} J_l
    return std::exp(std::lgamma(lambda + 1) - lambda * std::log(0.5 * x)) * big_j;
}

}  // namespace

double bessel_j_norm(double lambda, double x) {
    if (!(lambda > -1)) throw domain_error("bessel_j_norm requires lambda > -1");
    const double ax = std::abs(x);  // even in x
    const double cutoff = std::max(12.0, 2.0 * lambda);
    if (ax < cutoff) return bessel_j_series(lambda, ax);
    return bessel_j_asymptotic(lambda, ax);
}

std::complex<double> bessel_j_norm(double lambda, std::complex<double> x) {
    if (!(lambda > -1)) throw domain_error("bessel_j_norm requires lambda > -1");
    if (x.imag() == 0.0) return bessel_j_norm(lambda, x.real());
    return bessel_j_series(lambda, x);
}

double bessel_i_norm_scaled(double lambda, double omega) {
    if (!(lambda > -1)) throw domain_error("bessel_i_norm requires lambda > -1");
    if (omega < 0) throw domain_error("bessel_i_norm requires omega >= 0");
    if (omega < 30.0) {
        // itilde(w) e^{-w} by direct series
        double q = omega * omega * 0.25;
        double term = 1.0 / std::exp(std::lgamma(lambda + 1));
        double sum = term;
        for (int m = 0; m < 400; ++m) {
            term *= q / ((m + 1.0) * (lambda + m + 1.0));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum * std::exp(-omega);
    }
    // itilde(w) = (w/2)^{-l} I_l(w); I_l(w) e^{-w} ~ (2 pi w)^{-1/2} sum a_j(-w)^{-j}
    const double mu = 4.0 * lambda * lambda;
    double sum = 1.0, t = 1.0;
    for (int j = 1; j < 40; ++j) {
        t *= -(mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j * omega);
        sum += t;
        if (std::abs(t) < 1e-17) break;
    }
    return std::exp(-lambda * std::log(0.5 * omega) - 0.5 * std::log(2.0 * pi * omega)) * sum;
}

double bessel_i_norm_log(double lambda, double omega) {
    return omega + std::log(bessel_i_norm_scaled(lambda, omega));
}

double bessel_i_norm(double lambda, double omega) {
    double lg = bessel_i_norm_log(lambda, omega);
    if (lg > 700.0)
        throw convergence_error("bessel_i_norm overflow; use bessel_i_norm_log", lg);
    return std::exp(lg);
}

// ---------------------------------------------------------------------------
// Orthogonal polynomials
// ---------------------------------------------------------------------------

namespace {

double gegenbauer_recurrence(int n, double lambda, double u) {
    double c0 = 1.0, c1 = 2.0 * lambda * u;
    if (n == 0) return c0;
    for (int m = 2; m <= n; ++m) {
        double c2 = (2.0 * u * (m + lambda - 1.0) * c1 - (m + 2.0 * lambda - 2.0) * c0) / m;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

}  // namespace

double gegenbauer(int n, double lambda, double u) {
    if (n < 0) throw domain_error("gegenbauer requires n >= 0");
    if (!(lambda > 0)) throw domain_error("gegenbauer requires lambda > 0");
    if (std::abs(u) > 1.0 + 1e-12) throw domain_error("gegenbauer requires |u| <= 1");
    u = std::clamp(u, -1.0, 1.0);
    if (n > 20) return gegenbauer_recurrence(n, lambda, u);
    // explicit sum: sum_j (-1)^j (lambda)_{n-j} / (j! (n-2j)!) (2u)^{n-2j}
    double sum = 0.0;
    for (int j = 0; j <= n / 2; ++j) {
        double poch = 1.0;  // (lambda)_{n-j}
        for (int i = 0; i < n - j; ++i) poch *= lambda + i;
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        double fact2 = 1.0;
        for (int i = 2; i <= n - 2 * j; ++i) fact2 *= i;
        sum += ((j % 2 == 0) ? 1.0 : -1.0) * poch / (fact * fact2) *
               std::pow(2.0 * u, n - 2 * j);
    }
    return sum;
}

double gegenbauer_ratio(int n, double lambda, double u) {
    u = std::clamp(u, -1.0, 1.0);
    if (lambda < 1e-13) return std::cos(n * std::acos(u));  // Chebyshev limit
    double top = (n > 20) ? gegenbauer_recurrence(n, lambda, u) : gegenbauer(n, lambda, u);
    double bottom = 1.0;  // (2 lambda)_n / n!
    for (int i = 0; i < n; ++i) bottom *= (2.0 * lambda + i) / (i + 1.0);
    return top / bottom;
}

double laguerre(int l, double mu, double t) {
    if (l < 0) throw domain_error("laguerre requires l >= 0");
    if (!(mu > -1)) throw domain_error("laguerre requires mu > -1");
    if (l <= 12) {
        // sum_j (-1)^j Gamma(mu+l+1)/((l-j)! Gamma(mu+j+1)) t^j / j!
        double sum = 0.0;
        for (int j = 0; j <= l; ++j) {
            double num = 1.0;  // (mu+j+1)...(mu+l)
            for (int i = j + 1; i <= l; ++i) num *= mu + i;
            double fact = 1.0;
            for (int i = 2; i <= l - j; ++i) fact *= i;
            double jf = 1.0;
            for (int i = 2; i <= j; ++i) jf *= i;
            sum += ((j % 2 == 0) ? 1.0 : -1.0) * num / (fact * jf) * std::pow(t, j);
        }
        return sum;
    }
    double p0 = 1.0, p1 = mu + 1.0 - t;
    for (int m = 1; m < l; ++m) {
        double p2 = ((2.0 * m + mu + 1.0 - t) * p1 - (m + mu) * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// ---------------------------------------------------------------------------
// Gaussian quadrature (Golub-Welsch on the symmetric recurrence matrix)
// ---------------------------------------------------------------------------

namespace {

QuadratureRule golub_welsch(std::vector<double> diag, std::vector<double> offdiag, double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        jm(i, i) = diag[static_cast<size_t>(i)];
        if (i + 1 < n) {
            jm(i, i + 1) = offdiag[static_cast<size_t>(i)];
            jm(i + 1, i) = offdiag[static_cast<size_t>(i)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
    if (es.info() != Eigen::Success)
        throw convergence_error("quadrature node-finding failed to converge", 1.0);
    QuadratureRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        rule.nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[static_cast<size_t>(i)] = mu0 * v0 * v0;
    }
    rule.exactness_degree = 2 * n - 1;
    return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw domain_error("gauss_jacobi requires n >= 1");
    if (!(alpha > -1) || !(beta > -1))
        throw domain_error("gauss_jacobi requires alpha, beta > -1 (got alpha=" +
                           std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
    std::vector<double> a(static_cast<size_t>(n)), b;
    const double ab = alpha + beta;
    a[0] = (beta - alpha) / (ab + 2.0);
    for (int m = 1; m < n; ++m)
        a[static_cast<size_t>(m)] =
            (beta * beta - alpha * alpha) / ((2.0 * m + ab) * (2.0 * m + ab + 2.0));
    for (int m = 1; m < n; ++m) {
        double bm;
        if (m == 1)
            bm = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        else
            bm = 4.0 * m * (m + alpha) * (m + beta) * (m + ab) /
                 ((2.0 * m + ab) * (2.0 * m + ab) * (2.0 * m + ab + 1.0) * (2.0 * m + ab - 1.0));
        b.push_back(std::sqrt(bm));
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                                std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    QuadratureRule rule = golub_welsch(std::move(a), std::move(b), mu0);
    rule.weight_kind = QuadratureRule::WeightKind::jacobi;
    rule.alpha = alpha;
    rule.beta = beta;
    for (double& x : rule.nodes) x = std::clamp(x, -1.0, 1.0);
    return rule;
}

QuadratureRule gauss_gen_laguerre(int n, double alpha) {
    if (n < 1) throw domain_error("gauss_gen_laguerre requires n >= 1");
    if (!(alpha > -1)) throw domain_error("gauss_gen_laguerre requires alpha > -1");
    std::vector<double> a(static_cast<size_t>(n)), b;
    for (int m = 0; m < n; ++m) a[static_cast<size_t>(m)] = 2.0 * m + alpha + 1.0;
    for (int m = 1; m < n; ++m) b.push_back(std::sqrt(m * (m + alpha)));
    QuadratureRule rule = golub_welsch(std::move(a), std::move(b), std::exp(std::lgamma(alpha + 1.0)));
    rule.weight_kind = QuadratureRule::WeightKind::gen_laguerre;
    rule.alpha = alpha;
    for (double& x : rule.nodes) x = std::max(x, 0.0);
    return rule;
}

QuadratureRule gauss_legendre(int n) {
    QuadratureRule rule = gauss_jacobi(n, 0.0, 0.0);
    rule.weight_kind = QuadratureRule::WeightKind::legendre;
    return rule;
}

// ---------------------------------------------------------------------------
// Adaptive integration
// ---------------------------------------------------------------------------

namespace {

const QuadratureRule& panel_rule_lo() {
    static const QuadratureRule r = gauss_legendre(16);
    return r;
}

double panel_value(const std::function<double(double)>& f, double a, double b,
                   const QuadratureRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

struct AdaptState {
    const std::function<double(double)>* f;
    double tol;
    double achieved = 0.0;
    int evals = 0;
};

double adapt_rec(AdaptState& st, double a, double b, double coarse, int depth) {
    const double fine = panel_value(*st.f, a, 0.5 * (a + b), panel_rule_lo()) +
                        panel_value(*st.f, 0.5 * (a + b), b, panel_rule_lo());
    const double err = std::abs(fine - coarse);
    if (err < st.tol || depth >= 40) {
        st.achieved += err;
        return fine;
    }
    const double mid = 0.5 * (a + b);
    const double left = panel_value(*st.f, a, mid, panel_rule_lo());
    const double right = panel_value(*st.f, mid, b, panel_rule_lo());
    return adapt_rec(st, a, mid, left, depth + 1) + adapt_rec(st, mid, b, right, depth + 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    AdaptState st{&f, std::max(tol, 1e-15), 0.0, 0};
    const double coarse = panel_value(f, a, b, panel_rule_lo());
    const double v = adapt_rec(st, a, b, coarse, 0);
    if (st.achieved > 64.0 * std::max(tol, 1e-15) * std::max(1.0, std::abs(v)))
        throw convergence_error("adaptive_integrate failed to reach tolerance", st.achieved);
    return v;
}

// ---------------------------------------------------------------------------
// Half-line integration with weight s^lambda
// ---------------------------------------------------------------------------

RadialProfile RadialProfile::compactly_supported(std::function<double(double)> f, double radius) {
    RadialProfile p;
    p.kind = Kind::compact;
    p.support_radius = radius;
    p.eval = [f = std::move(f), radius](double r) { return r > radius ? 0.0 : f(r); };
    return p;
}

RadialProfile RadialProfile::exponential(std::function<double(double)> smooth_part, double rate) {
    RadialProfile p;
    p.kind = Kind::exponential;
    p.exp_rate = rate;
    p.smooth = std::move(smooth_part);
    p.eval = [g = p.smooth, rate](double r) { return g(r) * std::exp(-rate * r); };
    return p;
}

RadialProfile RadialProfile::generic(std::function<double(double)> f) {
    RadialProfile p;
    p.kind = Kind::generic;
    p.eval = std::move(f);
    return p;
}

namespace {

// integral_a^b f(s) s^lambda ds with the s=u^p substitution taming the s^lambda
// endpoint when a == 0.
double weighted_segment(const std::function<double(double)>& f, double lambda, double a, double b,
                        double tol) {
    if (b <= a) return 0.0;
    if (a > 0.0 || lambda >= 6.0) {
        return adaptive_integrate([&](double s) { return f(s) * std::pow(s, lambda); }, a, b, tol);
    }
    const int p = std::max(1, static_cast<int>(std::ceil(8.0 / (1.0 + lambda))));
    const double bu = std::pow(b, 1.0 / p);
    return adaptive_integrate(
        [&](double u) {
            const double s = std::pow(u, p);
            return static_cast<double>(p) * f(s) * std::pow(u, p * (1.0 + lambda) - 1.0);
        },
        0.0, bu, tol);
}

}  // namespace

double halfline_integrate(const RadialProfile& f, double lambda, double tol, int laguerre_order) {
    if (!(lambda > -1)) throw domain_error("halfline_integrate requires lambda > -1");
    switch (f.kind) {
        case RadialProfile::Kind::compact:
            return weighted_segment(f.eval, lambda, 0.0, f.support_radius, tol);
        case RadialProfile::Kind::exponential: {
            // integral g(s) e^{-cs} s^l ds = c^{-(l+1)} sum w_i g(x_i / c)
            const double c = f.exp_rate;
            const QuadratureRule rule = gauss_gen_laguerre(laguerre_order, lambda);
            const QuadratureRule check = gauss_gen_laguerre(laguerre_order + laguerre_order / 2, lambda);
            auto apply = [&](const QuadratureRule& q) {
                double s = 0;
                for (size_t i = 0; i < q.nodes.size(); ++i)
                    s += q.weights[i] * f.smooth(q.nodes[i] / c);
                return s * std::pow(c, -(lambda + 1.0));
            };
            const double v1 = apply(rule), v2 = apply(check);
            if (std::abs(v1 - v2) <= 256.0 * tol * std::max(1.0, std::abs(v2))) return v2;
            break;  // oscillatory or slowly-varying smooth part; fall through to panels
        }
        case RadialProfile::Kind::generic:
            break;
    }
    // panel-adaptive with dyadic tail
    double total = weighted_segment(f.eval, lambda, 0.0, 1.0, tol / 4);
    double lo = 1.0;
    int quiet = 0;
    for (int k = 0; k < 64 && quiet < 3; ++k) {
        const double hi = lo * 2.0;
        const double part = weighted_segment(f.eval, lambda, lo, hi, tol / 8);
        total += part;
        quiet = (std::abs(part) < tol / 4) ? quiet + 1 : 0;
        lo = hi;
    }
    if (quiet < 3)
        throw convergence_error("halfline_integrate: integrand tail did not settle", lo);
    return total;
}

// ---------------------------------------------------------------------------
// Laplace-Bessel identity
// ---------------------------------------------------------------------------

double laplace_bessel_closed(double nu, double a, double b) {
    if (!(nu > -1)) throw domain_error("laplace_bessel requires nu > -1");
    if (!(a > 0)) throw domain_error("laplace_bessel requires a > 0");
    return std::exp(std::lgamma(nu + 1.0) - (nu + 1.0) * std::log(a) - b * b / (4.0 * a));
}

double laplace_bessel_oracle(double nu, double a, double b) {
    const double closed = laplace_bessel_closed(nu, a, b);
    const RadialProfile integrand = RadialProfile::exponential(
        [nu, b](double t) { return bessel_j_norm(nu, b * std::sqrt(t)); }, a);
    const double quad = halfline_integrate(integrand, nu, 1e-12);
    const double rel = std::abs(quad - closed) / std::max(std::abs(closed), 1e-300);
    if (rel > 1e-10)
        throw convergence_error("laplace_bessel_oracle: quadrature disagrees with closed form", rel);
    return closed;
}

}  // namespace kh
