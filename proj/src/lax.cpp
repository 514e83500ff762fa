#include "bo/lax.hpp"

#include <cmath>
#include <string>

#include "bo/errors.hpp"

namespace bo {

LaxMatrix assemble_lax(const RealField& u) {
    const int N = u.truncation();
    Eigen::MatrixXcd L(N + 1, N + 1);
    for (int n = 0; n <= N; ++n) {
        L(n, n) = cplx(static_cast<double>(n) - u.mean(), 0.0);
        for (int p = 0; p < n; ++p) {
            const cplx v = -u.coeff(n - p);
            L(n, p) = v;
            L(p, n) = std::conj(v);  // exact Hermitian symmetry
        }
    }
    return {std::move(L)};
}

HardyField LaxSpectrum::eigenfunction(int n) const {
    std::vector<cplx> c(vectors.rows());
    for (int m = 0; m < vectors.rows(); ++m) c[m] = vectors(m, n);
    return HardyField(std::move(c));
}

LaxSpectrum eigendecompose(const LaxMatrix& L, const LaxOptions& opt) {
    const int N = static_cast<int>(L.entries.rows()) - 1;
    const int n_trust = opt.n_trust >= 0 ? std::min(opt.n_trust, N) : N / 2;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L.entries);
    if (es.info() != Eigen::Success) throw Error("eigendecompose: solver failed");

    LaxSpectrum spec;
    spec.lambda = es.eigenvalues();  // ascending
    spec.vectors = es.eigenvectors();
    spec.n_trust = n_trust;

    // Phase chain.  <f_0|1> = conj(V(0,0)) must be positive real; then each
    // <f_{n+1}|S f_n> = sum_m V(m,n+1) conj(V(m-1,n)) is rotated positive.
    {
        const cplx c0 = std::conj(spec.vectors(0, 0));
        if (std::abs(c0) < opt.tol_phase)
            throw PhaseDegenerate("eigendecompose: <f_0|1> vanishes");
        spec.vectors.col(0) *= std::abs(c0) / c0;
    }
    for (int n = 0; n < N; ++n) {
        cplx inner(0.0);
        for (int m = 1; m <= N; ++m) inner += spec.vectors(m, n + 1) * std::conj(spec.vectors(m - 1, n));
        if (std::abs(inner) < opt.tol_phase) {
            if (n + 1 <= n_trust)
                throw PhaseDegenerate("eigendecompose: phase chain breaks at n = " + std::to_string(n + 1));
            continue;  // untrusted tail; leave the solver's phase
        }
        spec.vectors.col(n + 1) *= std::abs(inner) / inner;
    }

    spec.gamma.resize(n_trust);
    for (int n = 1; n <= n_trust; ++n) {
        const double g = spec.lambda(n) - spec.lambda(n - 1) - 1.0;
        if (g < -opt.tol_gap)
            throw GapViolation("eigendecompose: gamma_" + std::to_string(n) + " = " + std::to_string(g));
        spec.gamma[n - 1] = std::max(g, 0.0);
    }
    return spec;
}

std::vector<double> gap_sequence(const LaxSpectrum& spec, double tol_gap) {
    std::vector<double> g(spec.n_trust);
    for (int n = 1; n <= spec.n_trust; ++n) {
        const double v = spec.lambda(n) - spec.lambda(n - 1) - 1.0;
        if (v < -tol_gap)
            throw GapViolation("gap_sequence: gamma_" + std::to_string(n) + " = " + std::to_string(v));
        g[n - 1] = std::max(v, 0.0);
    }
    return g;
}

GenFunValue genfun_resolvent(const RealField& u, cplx lambda_arg, double tol_pole) {
    LaxMatrix L = assemble_lax(u);
    const int sz = static_cast<int>(L.entries.rows());
    Eigen::MatrixXcd A = L.entries + lambda_arg * Eigen::MatrixXcd::Identity(sz, sz);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(sz);
    e0(0) = 1.0;
    Eigen::VectorXcd w = A.partialPivLu().solve(e0);
    // ||w|| <= 1/dist(-lambda, spec); a huge solution flags a near-pole
    if (w.norm() > 1.0 / tol_pole)
        throw NearPole("genfun_resolvent: lambda within tolerance of a pole");
    // <w|1> is the mode-0 coefficient of w
    return {lambda_arg, w(0)};
}

GenFunValue genfun_product(const LaxSpectrum& spec, cplx lambda_arg, double tol_pole) {
    if (std::abs(spec.lambda(0) + lambda_arg) < tol_pole)
        throw NearPole("genfun_product: lambda at -lambda_0");
    cplx val = 1.0 / (spec.lambda(0) + lambda_arg);
    for (int n = 1; n <= spec.n_trust; ++n) {
        const cplx den = spec.lambda(n) + lambda_arg;
        if (spec.gamma[n - 1] > 0.0 && std::abs(den) < tol_pole)
            throw NearPole("genfun_product: lambda at -lambda_" + std::to_string(n));
        val *= 1.0 - spec.gamma[n - 1] / den;
    }
    return {lambda_arg, val};
}

}  // namespace bo
