#ifndef BO_BIRKHOFF_HPP
#define BO_BIRKHOFF_HPP

#include <complex>
#include <vector>

#include "bo/field.hpp"
#include "bo/lax.hpp"

namespace bo {

/// Nonlinear Fourier data: complex zeta_n (n = 1..P) with gamma_n = |zeta_n|^2,
/// plus the derived finite-gap quantities, all rebuilt deterministically from
/// the actions so that phase reassignment leaves them bitwise unchanged.
class BirkhoffState {
  public:
    BirkhoffState() = default;
    /// zeta holds zeta_1..zeta_P; the derived lambda/kappa/mu ratios are
    /// recomputed from |zeta_n|^2 on construction.
    BirkhoffState(std::vector<cplx> zeta, double mean_c);

    int gaps() const { return static_cast<int>(zeta_.size()); }  // P
    double mean() const { return mean_c_; }

    cplx zeta(int n) const { return n == 0 ? cplx(1.0) : zeta_[n - 1]; }  // zeta_0 := 1
    double gamma(int n) const { return gamma_[n - 1]; }                   // n = 1..P
    double lambda(int n) const { return lambda_[n]; }                     // n = 0..P
    double kappa(int n) const { return kappa_[n]; }                       // n = 0..P
    double mu_ratio(int n) const { return mu_ratio_[n]; }                 // mu_{n+1}/kappa_{n+1}, n = 0..P-1

    const std::vector<cplx>& zetas() const { return zeta_; }
    const std::vector<double>& gammas() const { return gamma_; }
    const std::vector<double>& lambdas() const { return lambda_; }
    const std::vector<double>& kappas() const { return kappa_; }
    const std::vector<double>& mu_ratios() const { return mu_ratio_; }

    /// Phase rotation zeta_n -> zeta_n e^{i theta_n}; derived data is copied,
    /// not recomputed, so actions stay bitwise identical.
    BirkhoffState rotated(const std::vector<double>& theta) const;

    /// Discarded action beyond the retained gaps, as reported by the forward map.
    double tail_action = 0.0;

  private:
    std::vector<cplx> zeta_;
    std::vector<double> gamma_;     // 1..P
    std::vector<double> lambda_;    // 0..P
    std::vector<double> kappa_;     // 0..P
    std::vector<double> mu_ratio_;  // 0..P-1
    double mean_c_ = 0.0;
};

struct BirkhoffOptions {
    LaxOptions lax;
    double tol_tail = 1e-10;  // retained-gap rule and zeta zeroing threshold
};

/// kappa_0..kappa_{n_trust} from the spectrum via the unconditional product
/// formula (works when gaps vanish).  NonPositiveKappa on a nonpositive factor.
std::vector<double> kappa_sequence(const LaxSpectrum& spec);

/// mu_{n+1}/kappa_{n+1} for n = 0..n_trust-1 via the quoted product.
std::vector<double> mu_ratio_sequence(const LaxSpectrum& spec);

/// Forward nonlinear Fourier transform.  The mean is split off and carried in
/// the state; zeta_n with action below tol_tail is exactly zero.
BirkhoffState birkhoff_forward(const RealField& u, const BirkhoffOptions& opt = {});

/// Same, reusing a precomputed spectrum of the mean-zero part.
BirkhoffState birkhoff_from_spectrum(const LaxSpectrum& spec, double mean_c,
                                     const BirkhoffOptions& opt = {});

struct FrequencyVector {
    std::vector<double> omega;  // omega_{c,n}, n = 1..P
    double c = 0.0;
};

/// omega_{c,n} = n^2 - 2 sum_k min(n,k) gamma_k + 2 c n.
FrequencyVector frequencies(const BirkhoffState& state, double c = 0.0);

/// H_B = sum k^2 gamma_k - sum_k (sum_{p>=k} gamma_p)^2.
double hamiltonian_B(const BirkhoffState& state);

/// 2 sum n gamma_n (equals the squared L^2 norm of the mean-zero potential).
double trace_formula(const BirkhoffState& state);

}  // namespace bo

#endif
