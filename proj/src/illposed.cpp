#include "bo/illposed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bo/errors.hpp"
#include "bo/finite_gap.hpp"
#include "bo/quadrature.hpp"

namespace bo {
namespace {

void check_params(double mu, double eps, double q) {
    if (!(eps > 0.0 && eps < q && q < 1.0))
        throw DomainError("eval_F: need 0 < eps < q < 1");
    if (!(mu > 0.0)) throw DomainError("eval_F: need mu > 0");
}

// (F1) integrand without the endpoint weights:
// h1(t) = (1-qt)^{eps-1} (mu (1-qt) - eps q t); 1-qt computed from q-t.
double h1_of(double mu, double eps, double q, double t, double q_minus_t) {
    const double om = (1.0 - q * q) + q * q_minus_t;  // 1 - q t, stable near t = q
    return std::pow(om, eps - 1.0) * (mu * om - eps * q * t);
}

double F_gauss_jacobi(double mu, double eps, double q, int n) {
    const QuadRule rule = gauss_jacobi(n, -eps, eps + mu - 1.0);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = q * (rule.x[i] + 1.0) / 2.0;
        sum += rule.w[i] * h1_of(mu, eps, q, t, q - t);
    }
    return std::pow(q / 2.0, mu) * sum;
}

double F_tanh_sinh(double mu, double eps, double q, double tol) {
    auto f = [&](double t, double qmt) {
        return std::pow(t, eps + mu - 1.0) * std::pow(qmt, -eps) * h1_of(mu, eps, q, t, qmt);
    };
    return tanh_sinh(f, 0.0, q, tol);
}

// integrated-by-parts form, evaluated by tanh-sinh with a cancellation-free
// divided difference of phi(t) = t^mu (1-qt)^eps
double F_alt_tanh_sinh(double mu, double eps, double q, double tol) {
    const double omq2 = 1.0 - q * q;
    const double log_phi_q = mu * std::log(q) + eps * std::log(omq2);
    auto f = [&](double t, double qmt) {
        const double w = mu * std::log1p(-qmt / q) + eps * std::log1p(q * qmt / omq2);
        const double g = -std::exp(log_phi_q) * std::expm1(w) / qmt;
        return std::pow(t, eps - 1.0) * std::pow(qmt, -eps) * g;
    };
    return eps * q * tanh_sinh(f, 0.0, q, tol);
}

}  // namespace

double eval_F(double mu, double eps, double q, const EvalFOptions& opt) {
    check_params(mu, eps, q);
    double value;
    if (1.0 - q * q < 1e-4) {
        value = F_tanh_sinh(mu, eps, q, opt.tol);
    } else {
        double prev = F_gauss_jacobi(mu, eps, q, 16);
        bool converged = false;
        for (int n = 32; n <= 512; n *= 2) {
            const double cur = F_gauss_jacobi(mu, eps, q, n);
            if (std::abs(cur - prev) <= opt.tol * std::max(1.0, std::abs(cur))) {
                prev = cur;
                converged = true;
                break;
            }
            prev = cur;
        }
        if (!converged)
            throw QuadratureNotConverged("eval_F: Gauss-Jacobi doubling stalled at n=512");
        value = prev;
    }
    if (opt.cross_check) {
        const double alt = F_alt_tanh_sinh(mu, eps, q, opt.tol);
        if (std::abs(value - alt) > opt.cross_tol * std::max({1.0, std::abs(value), std::abs(alt)}))
            throw QuadratureNotConverged("eval_F: forms disagree: " + std::to_string(value) +
                                         " vs " + std::to_string(alt));
    }
    return value;
}

double eval_F_dmu(double mu, double eps, double q, double h) {
    EvalFOptions fast;
    fast.cross_check = false;
    return (eval_F(mu + h, eps, q, fast) - eval_F(mu - h, eps, q, fast)) / (2.0 * h);
}

double lambda0_root(double eps, double q) {
    EvalFOptions fast;
    fast.cross_check = false;
    double hi = eps * q * q / (1.0 - q * q);
    const double f_hi = eval_F(hi, eps, q, fast);
    if (f_hi <= 0.0) throw NoBracket("lambda0_root: F not positive at eps q^2/(1-q^2)");
    double lo = hi / 2.0;
    double f_lo = eval_F(lo, eps, q, fast);
    int tries = 0;
    while (f_lo > 0.0) {
        lo /= 2.0;
        if (++tries > 60) throw NoBracket("lambda0_root: no sign change on (0, eps q^2/(1-q^2)]");
        f_lo = eval_F(lo, eps, q, fast);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (eval_F(mid, eps, q, fast) > 0.0 ? hi : lo) = mid;
    }
    // secant polish
    double a = lo, b = hi, fa = eval_F(a, eps, q, fast), fb = eval_F(b, eps, q, fast);
    for (int it = 0; it < 4 && fb != fa; ++it) {
        const double c = b - fb * (b - a) / (fb - fa);
        if (!(c > 0.0)) break;
        a = b; fa = fb;
        b = c; fb = eval_F(b, eps, q, fast);
    }
    const double root = std::abs(fb) < std::abs(fa) ? b : a;
    if (std::abs(eval_F(root, eps, q, fast)) > 1e-10)
        throw QuadratureNotConverged("lambda0_root: |F(mu*)| > 1e-10");
    return root;
}

UkField build_uk(int k, const BuildUkOptions& opt) {
    if (k < 1) throw DomainError("build_uk: k must be positive");
    EvalFOptions fast;
    fast.cross_check = false;
    double eps = opt.eps_start, q = 0.0, f = 0.0;
    for (;;) {
        q = std::sqrt(1.0 - std::exp(-std::pow(eps, -1.5)));
        const double mu_cap = eps * q * q / (1.0 - q * q);
        if (eps < q && mu_cap > static_cast<double>(k)) {
            f = eval_F(static_cast<double>(k), eps, q, fast);
            if (f < 0.0) break;
        }
        eps /= 2.0;
        if (eps < 1e-6) throw TruncationInsufficient("build_uk: no admissible eps_k found");
    }
    // truncation: q^N < 1e-14, honest failure when even N_max cannot reach 1e-10
    const double lq = std::log(q);
    const int n_need = static_cast<int>(std::ceil(std::log(1e-14) / lq));
    if (std::exp(opt.n_max * lq) > 1e-10)
        throw TruncationInsufficient("build_uk: q_k^N_max > 1e-10; k = " + std::to_string(k) +
                                     " is outside the representable range");
    const int N = std::min(n_need, opt.n_max);
    UkField out{one_gap_potential(q, eps * q, N), {eps, q, 0.0}, k, f};
    return out;
}

XiSeries xi_timeseries(const RealField& u, const std::vector<double>& t_grid, double c,
                       const BirkhoffOptions& opt) {
    XiSeries s;
    s.c = c;
    s.times = t_grid;
    s.state = birkhoff_forward(u, opt);
    const int P = s.state.gaps();
    s.coef.resize(P);
    s.freq.resize(P);
    for (int n = 0; n < P; ++n) {
        s.coef[n] = -std::sqrt(s.state.mu_ratio(n) * s.state.kappa(n)) * s.state.zeta(n + 1) *
                    std::conj(s.state.zeta(n));
        s.freq[n] = 1.0 + 2.0 * s.state.lambda(n);
    }
    s.xi.resize(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        cplx acc(0.0);
        for (int n = 0; n < P; ++n) acc += s.coef[n] * std::polar(1.0, s.freq[n] * t);
        s.xi[i] = acc * std::polar(1.0, -2.0 * c * t);
    }
    return s;
}

WindowedIntegral windowed_integral(const XiSeries& series, double t_a, double t_b, double lambda0) {
    if (!(t_b > t_a)) throw IntervalTooShort("windowed_integral: empty interval");
    std::vector<double> ts;
    std::vector<cplx> vals;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < t_a - 1e-12 || t > t_b + 1e-12) continue;
        ts.push_back(t);
        vals.push_back(series.xi[i] * std::polar(1.0, -(1.0 + 2.0 * lambda0) * t));
    }
    if (ts.size() < 2) throw IntervalTooShort("windowed_integral: fewer than 2 grid points in window");
    cplx integral(0.0);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        integral += 0.5 * (vals[i] + vals[i + 1]) * (ts[i + 1] - ts[i]);

    WindowedIntegral out;
    out.integral = integral;
    out.length = t_b - t_a;
    const double g1 = series.state.gaps() >= 1 ? series.state.gamma(1) : 0.0;
    out.predicted = g1 > 0.0
                        ? -std::sqrt(2.0) * series.state.zeta(1) / std::sqrt(g1) * out.length
                        : cplx(0.0);
    return out;
}

TwoGapDivergence two_gap_divergence(double gamma, double t, int truncation) {
    if (!(gamma > 0.0)) throw DomainError("two_gap_divergence: gamma must be positive");
    TwoGapDivergence out;
    out.phi1 = t * (1.0 - 4.0 * gamma);
    out.phi2 = t * (4.0 - 6.0 * gamma);
    const double r = std::sqrt(gamma);
    out.state = BirkhoffState({std::polar(r, out.phi1), std::polar(r, out.phi2)}, 0.0);
    out.field = reconstruct(out.state, truncation);
    const auto c = q_polynomial(transfer_matrix(out.state));
    const cplx disc = std::sqrt(c[1] * c[1] - 4.0 * c[2]);
    cplx q1 = 0.5 * (c[1] + disc), q2 = 0.5 * (c[1] - disc);
    const cplx target = std::polar(1.0, out.phi1);
    if (std::abs(q1 - target) > std::abs(q2 - target)) std::swap(q1, q2);
    out.q1 = q1;
    out.q2 = q2;
    return out;
}

double renormalization_scan(const TwoGapDivergence& a, const TwoGapDivergence& b, int eta_grid) {
    double best = 1e300;
    for (int j = 0; j < eta_grid; ++j) {
        const cplx ph = std::polar(1.0, 2.0 * M_PI * j / eta_grid);
        best = std::min(best, std::abs(b.q1 - ph * a.q1) + std::abs(b.q2 - ph * a.q2));
    }
    return best;
}

}  // namespace bo
