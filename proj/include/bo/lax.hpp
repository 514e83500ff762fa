#ifndef BO_LAX_HPP
#define BO_LAX_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bo/field.hpp"

namespace bo {

/// Tolerances for the spectral pipeline.  All configurable; defaults match
/// double precision with geometrically decaying coefficients.
struct LaxOptions {
    int n_trust = -1;          // trusted eigenpairs; -1 means floor(N/2)
    double tol_gap = 1e-8;     // gamma_n >= -tol_gap or GapViolation
    double tol_phase = 1e-10;  // |<f_{n+1}|S f_n>| below this is PhaseDegenerate
    double tol_pole = 1e-6;    // generating-function pole guard
};

/// Truncated L_u = D - T_u on the Hardy modes 0..N; entry(n,p) = n d_np - u_hat(n-p).
/// Hermitian by construction since u is real.
struct LaxMatrix {
    Eigen::MatrixXcd entries;
};

LaxMatrix assemble_lax(const RealField& u);

/// Eigen-data of the truncated Lax operator with the normalized phase chain
/// <f_0|1> > 0, <f_{n+1}|S f_n> > 0 (S = shift by e^{ix}).
struct LaxSpectrum {
    Eigen::VectorXd lambda;    // ascending, size N+1
    Eigen::MatrixXcd vectors;  // orthonormal columns, mode basis
    std::vector<double> gamma; // gamma_n = lambda_n - lambda_{n-1} - 1, n = 1..n_trust, clipped >= 0
    int n_trust = 0;

    int size() const { return static_cast<int>(lambda.size()); }
    /// <1 | f_n> = conj of the mode-0 component of f_n.
    cplx ip_one(int n) const { return std::conj(vectors(0, n)); }
    HardyField eigenfunction(int n) const;
};

LaxSpectrum eigendecompose(const LaxMatrix& L, const LaxOptions& opt = {});

/// Clipped gap sequence; raises GapViolation if some trusted gap < -tol_gap.
std::vector<double> gap_sequence(const LaxSpectrum& spec, double tol_gap = 1e-8);

struct GenFunValue {
    cplx lambda_arg;
    cplx value;
};

/// H_lambda(u) = <(L_u + lambda)^{-1} 1 | 1> by a dense solve in mode space.
GenFunValue genfun_resolvent(const RealField& u, cplx lambda_arg, double tol_pole = 1e-6);

/// Same function from the spectral data: 1/(lambda_0 + l) prod (1 - gamma_n/(lambda_n + l)),
/// product over trusted gaps (the tail is treated as exactly zero).
GenFunValue genfun_product(const LaxSpectrum& spec, cplx lambda_arg, double tol_pole = 1e-6);

}  // namespace bo

#endif
