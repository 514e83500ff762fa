#include "bo/finite_gap.hpp"

#include <cmath>
#include <string>

#include "bo/errors.hpp"

namespace bo {

TransferMatrix transfer_matrix(const BirkhoffState& state) {
    const int P = state.gaps();
    for (int n = 1; n <= P; ++n)
        if (!std::isfinite(state.gamma(n)) || state.gamma(n) < 0.0)
            throw MissingGap("transfer_matrix: invalid action at n=" + std::to_string(n));
    Eigen::MatrixXcd M(P, P);
    for (int n = 0; n < P; ++n) {
        const double rn = state.mu_ratio(n);
        for (int p = 0; p < P; ++p) {
            const double scale = std::sqrt(rn * state.kappa(p));
            if (p == n + 1) {
                // zeta_{n+1} conj(zeta_{n+1}) / gamma_{n+1} == 1 in the limit
                M(n, p) = scale;
                continue;
            }
            const double denom = state.lambda(p) - state.lambda(n) - 1.0;
            if (std::abs(denom) < 1e-12)
                throw ZeroDenominator("transfer_matrix: lambda_p - lambda_n - 1 ~ 0 at (" +
                                      std::to_string(n) + "," + std::to_string(p) + ")");
            M(n, p) = scale * state.zeta(n + 1) * std::conj(state.zeta(p)) / denom;
        }
    }
    return {std::move(M)};
}

std::vector<cplx> q_polynomial(const TransferMatrix& T) {
    const int P = static_cast<int>(T.M.rows());
    std::vector<cplx> c(P + 1, cplx(0.0));
    c[0] = 1.0;
    if (P == 0) return c;
    if (P <= 64) {
        // Leverrier-Faddeev: c_k = -tr(M_k)/k, M_{k+1} = M (M_k + c_k I)
        Eigen::MatrixXcd Mk = T.M;
        for (int k = 1; k <= P; ++k) {
            c[k] = -Mk.trace() / static_cast<double>(k);
            if (k < P) Mk = T.M * (Mk + c[k] * Eigen::MatrixXcd::Identity(P, P));
        }
        return c;
    }
    // large P: det(I - zM) = prod (1 - z m_i) from the eigenvalues of M
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T.M, false);
    if (es.info() != Eigen::Success) throw Error("q_polynomial: eigensolver failed");
    for (int i = 0; i < P; ++i) {
        const cplx m = es.eigenvalues()(i);
        for (int k = i + 1; k >= 1; --k) c[k] -= m * c[k - 1];
    }
    return c;
}

std::vector<cplx> q_roots(const std::vector<cplx>& coeffs) {
    // deflate negligible leading coefficients (roots at infinity)
    int deg = static_cast<int>(coeffs.size()) - 1;
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    while (deg > 0 && std::abs(coeffs[deg]) < 1e-300 * std::max(1.0, scale)) --deg;
    if (deg <= 0) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) C(i, deg - 1) = -coeffs[i] / coeffs[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    if (es.info() != Eigen::Success) throw Error("q_roots: eigensolver failed");
    std::vector<cplx> out(deg);
    for (int i = 0; i < deg; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

RealField reconstruct(const BirkhoffState& state, int truncation) {
    const auto coeffs = q_polynomial(transfer_matrix(state));
    for (const cplx& z : q_roots(coeffs))
        if (std::abs(z) <= 1.0 + 1e-10)
            throw RootInsideDisc("reconstruct: Q has a root of modulus " + std::to_string(std::abs(z)));

    const int P = static_cast<int>(coeffs.size()) - 1;
    // A Q = -z Q'  =>  a_n = -n c_n - sum_{k=1..min(P,n-1)} c_k a_{n-k}; a_0 = 0 exactly
    std::vector<cplx> a(truncation + 1, cplx(0.0));
    for (int n = 1; n <= truncation; ++n) {
        cplx s = (n <= P) ? -static_cast<double>(n) * coeffs[n] : cplx(0.0);
        const int kmax = std::min(P, n - 1);
        for (int k = 1; k <= kmax; ++k) s -= coeffs[k] * a[n - k];
        a[n] = s;
    }
    a[0] = cplx(state.mean(), 0.0);
    return RealField::from_nonneg_modes(std::move(a));
}

cplx first_coefficient(const BirkhoffState& state) {
    cplx s(0.0);
    for (int n = 0; n < state.gaps(); ++n)
        s -= std::sqrt(state.mu_ratio(n) * state.kappa(n)) * state.zeta(n + 1) * std::conj(state.zeta(n));
    return s;
}

}  // namespace bo
