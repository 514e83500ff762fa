#ifndef BO_FINITE_GAP_HPP
#define BO_FINITE_GAP_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bo/birkhoff.hpp"
#include "bo/field.hpp"

namespace bo {

/// P x P matrix M_np = sqrt(mu_{n+1} kappa_p / kappa_{n+1}) zeta_{n+1} conj(zeta_p)
/// / (lambda_p - lambda_n - 1), with zeta_0 := 1.  The p = n+1 entry is the
/// 0/0-free limit sqrt(mu_{n+1} kappa_{n+1} / kappa_{n+1} * kappa_{n+1}), so
/// states with vanishing interior gaps stay invertible.
struct TransferMatrix {
    Eigen::MatrixXcd M;
};

TransferMatrix transfer_matrix(const BirkhoffState& state);

/// Coefficients c_0..c_P of Q(z) = det(I - zM), c_0 = 1.
/// Leverrier-Faddeev for small P, eigenvalue product for large P.
std::vector<cplx> q_polynomial(const TransferMatrix& M);

/// Roots of Q (for the unit-disc check); companion-matrix eigenvalues.
std::vector<cplx> q_roots(const std::vector<cplx>& coeffs);

/// Taylor-expand Pi u = -z Q'(z)/Q(z) to order N and symmetrize; the mean is
/// added back on mode 0.  RootInsideDisc if Q vanishes on the closed disc.
RealField reconstruct(const BirkhoffState& state, int truncation);

/// u_hat(1) = -sum_n sqrt(mu_{n+1} kappa_n / kappa_{n+1}) zeta_{n+1} conj(zeta_n).
cplx first_coefficient(const BirkhoffState& state);

}  // namespace bo

#endif
