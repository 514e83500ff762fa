#ifndef BO_ILLPOSED_HPP
#define BO_ILLPOSED_HPP

#include <complex>
#include <vector>

#include "bo/birkhoff.hpp"
#include "bo/field.hpp"

namespace bo {

/// Parameters of the deep-ground-state family u = 2 Re(eps q e^{ix}/(1 - q e^{ix})).
struct IllposedParams {
    double epsilon = 0.0;  // 0 < epsilon < q < 1
    double q = 0.0;
    double mu = 0.0;       // candidate -lambda_0 (> 0)
};

struct EvalFOptions {
    double tol = 1e-11;          // doubling agreement target
    bool cross_check = true;     // evaluate the integrated-by-parts form as well
    double cross_tol = 1e-8;     // allowed relative disagreement between the forms
};

/// The eigenvalue condition F(mu, eps, q): -mu is an eigenvalue of L_u iff
/// F = 0.  Gauss-Jacobi with both endpoint exponents absorbed into the
/// weight; tanh-sinh when 1 - q^2 < 1e-4 (the (1-qt)^{eps-1} boundary layer
/// at t -> q is then too thin for a fixed-order rule).
double eval_F(double mu, double eps, double q, const EvalFOptions& opt = {});

/// Central finite difference of F in mu.
double eval_F_dmu(double mu, double eps, double q, double h = 1e-5);

/// The unique positive root of F(., eps, q); equals -lambda_0(u).
/// Bisection from the bracket (0, eps q^2/(1-q^2)] plus a secant polish;
/// |F(mu*)| < 1e-10 on return.  NoBracket if F is nonnegative on the bracket.
double lambda0_root(double eps, double q);

struct UkField {
    RealField u;            // u^(k), mean zero
    IllposedParams params;  // selected eps_k, q_k; mu holds the F-root (-lambda_0)
    int k = 0;
    double f_at_k = 0.0;    // F(k, eps_k, q_k), negative by construction
};

struct BuildUkOptions {
    double eps_start = 0.5;  // largest dyadic candidate
    int n_max = 4096;
};

/// Deep-ground-state initial data: picks the largest dyadic eps_k with
/// F(k, eps_k, q_k) < 0 and eps_k q_k^2/(1-q_k^2) > k, where
/// q_k^2 = 1 - e^{-eps_k^{-3/2}}.  Truncation N satisfies q^N < 1e-14;
/// TruncationInsufficient if q^N_max > 1e-10 (k out of the representable range).
UkField build_uk(int k, const BuildUkOptions& opt = {});

/// xi(t) = <S(t, u + c) | e^{ix}> as an explicit exponential sum over the
/// retained Birkhoff data of u.
struct XiSeries {
    std::vector<double> times;
    std::vector<cplx> xi;
    BirkhoffState state;       // the Birkhoff inputs used
    std::vector<cplx> coef;    // term n: coef[n] e^{i t freq[n]}, n = 0..P-1
    std::vector<double> freq;  // 1 + 2 lambda_n
    double c = 0.0;
};

XiSeries xi_timeseries(const RealField& u, const std::vector<double>& t_grid, double c = 0.0,
                       const BirkhoffOptions& opt = {});

struct WindowedIntegral {
    cplx integral;   // trapezoid of xi(t) e^{-it(1+2 lambda_0)} over [t_a, t_b]
    cplx predicted;  // leading term -sqrt(2) zeta_1/sqrt(gamma_1) |I|
    double length;   // |I|
};

WindowedIntegral windowed_integral(const XiSeries& series, double t_a, double t_b, double lambda0);

/// Equal-action two-gap family evolved by the exact phase laws
/// phi_1(t) = t(1 - 4g), phi_2(t) = t(4 - 6g); reports the factorization
/// Q(z) = (1 + q1 z)(1 + q2 z) with q1 paired to e^{i phi_1}.
struct TwoGapDivergence {
    BirkhoffState state;
    RealField field;
    cplx q1, q2;
    double phi1 = 0.0, phi2 = 0.0;
};

TwoGapDivergence two_gap_divergence(double gamma, double t, int truncation = 64);

/// min over a phase grid of |q1' - e^{i eta} q1| + |q2' - e^{i eta} q2|;
/// the quantitative non-renormalizability witness.
double renormalization_scan(const TwoGapDivergence& a, const TwoGapDivergence& b,
                            int eta_grid = 720);

}  // namespace bo

#endif
