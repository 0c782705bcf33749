#ifndef KH_SPECFUN_HPP
#define KH_SPECFUN_HPP

#include <complex>
#include <optional>

#include "kh/common.hpp"

namespace kh {

/// Gaussian quadrature rule with its declared weight function.
struct QuadratureRule {
    enum class WeightKind { jacobi, gen_laguerre, legendre };
    WeightKind weight_kind = WeightKind::legendre;
    double alpha = 0.0;  // jacobi (1-u)^a (1+u)^b on [-1,1]; laguerre t^a e^{-t} on [0,inf)
    double beta = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness_degree = 0;

    double total_weight() const {
        double s = 0;
        for (double w : weights) s += w;
        return s;
    }
    // Integral of the weight function in closed Beta/Gamma form.
    double weight_integral() const;
};

double log_gamma(double x);  // x > 0

// Normalized Bessel j_l(x) = 2^l Gamma(l+1) x^{-l} J_l(x), j_l(0) = 1.
// Power series below |x| = max(12, 2l), Hankel asymptotics above.
double bessel_j_norm(double lambda, double x);
std::complex<double> bessel_j_norm(double lambda, std::complex<double> x);

// I-normalized Bessel: itilde_l(w) = j_l(iw)/Gamma(l+1); positive, increasing.
double bessel_i_norm(double lambda, double omega);
double bessel_i_norm_log(double lambda, double omega);     // log of the value
double bessel_i_norm_scaled(double lambda, double omega);  // e^{-w} itilde_l(w), overflow-free

double gegenbauer(int n, double lambda, double u);  // explicit sum for n<=20, recurrence above
// C_n^l(u) / C_n^l(1); well defined down to lambda = 0 (Chebyshev limit).
double gegenbauer_ratio(int n, double lambda, double u);

double laguerre(int l, double mu, double t);

QuadratureRule gauss_jacobi(int n, double alpha, double beta);
QuadratureRule gauss_gen_laguerre(int n, double alpha);
QuadratureRule gauss_legendre(int n);

// Adaptive panel integration of f over [a,b] (embedded Gauss 16/32 panels).
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

/// Radial profile on r >= 0 carrying decay metadata.  The metadata selects the
/// half-line quadrature strategy.
struct RadialProfile {
    enum class Kind { compact, exponential, generic };
    std::function<double(double)> eval;
    Kind kind = Kind::generic;
    double support_radius = 0.0;  // compact: eval vanishes beyond it
    double exp_rate = 0.0;        // exponential: eval(s) = smooth(s) exp(-exp_rate*s)
    std::function<double(double)> smooth;

    double operator()(double r) const { return eval(r); }

    static RadialProfile compactly_supported(std::function<double(double)> f, double radius);
    static RadialProfile exponential(std::function<double(double)> smooth_part, double rate);
    static RadialProfile generic(std::function<double(double)> f);
};

// integral_0^inf f(s) s^lambda ds, lambda > -1, absolute error target tol.
double halfline_integrate(const RadialProfile& f, double lambda, double tol = 1e-10,
                          int laguerre_order = 96);

// Gamma(nu+1) a^{-(nu+1)} exp(-b^2/(4a)); equals integral_0^inf e^{-at} t^nu j_nu(b sqrt t) dt.
double laplace_bessel_closed(double nu, double a, double b);
// Closed form, asserting quadrature agreement to 1e-10 relative.
double laplace_bessel_oracle(double nu, double a, double b);

}  // namespace kh

#endif
