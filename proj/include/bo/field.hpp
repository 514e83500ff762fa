#ifndef BO_FIELD_HPP
#define BO_FIELD_HPP

#include <complex>
#include <vector>

namespace bo {

using cplx = std::complex<double>;

class HardyField;

/// Real-valued function on the torus stored as truncated Fourier coefficients.
///
/// Only modes 0..N are stored; negative modes are implied by the Hermitian
/// symmetry coeff(-n) = conj(coeff(n)), which is enforced at construction so
/// the field can never drift into complex values.
class RealField {
  public:
    RealField() : RealField(0) {}
    explicit RealField(int truncation);

    /// Build from modes 0..N.  modes[0] must be real (|Im| <= 1e-12 relative).
    static RealField from_nonneg_modes(std::vector<cplx> modes);

    /// Build from a full spectrum indexed -N..N (full[k] is mode k-N).
    /// Symmetrizes and rejects if the relative asymmetry exceeds 1e-12.
    static RealField from_full_spectrum(const std::vector<cplx>& full);

    int truncation() const { return n_; }
    double mean() const { return pos_[0].real(); }

    /// Coefficient at any mode; 0 outside the stored band.
    cplx coeff(int n) const;

    const std::vector<cplx>& nonneg_modes() const { return pos_; }

    void set_mode(int n, cplx v);  // n >= 0; n = 0 keeps only the real part

    RealField& operator+=(const RealField& o);
    RealField& operator-=(const RealField& o);
    RealField& operator*=(double a);
    friend RealField operator+(RealField a, const RealField& b) { return a += b; }
    friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
    friend RealField operator*(double a, RealField f) { return f *= a; }

    /// Translate x -> x + a (coefficients pick up e^{ina}).
    RealField translated(double a) const;

    /// Samples on the uniform grid x_j = 2 pi j / m.
    std::vector<double> grid_values(std::size_t m) const;

  private:
    int n_;
    std::vector<cplx> pos_;  // modes 0..N, pos_[0] real
};

/// Element of the Hardy space H_+: modes 0..N only.
class HardyField {
  public:
    explicit HardyField(int truncation) : coeffs_(truncation + 1, cplx(0.0)) {}
    explicit HardyField(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {}

    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
    cplx coeff(int n) const {
        return (n >= 0 && n < static_cast<int>(coeffs_.size())) ? coeffs_[n] : cplx(0.0);
    }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    std::vector<cplx>& coeffs() { return coeffs_; }

  private:
    std::vector<cplx> coeffs_;
};

/// H^s norm, (sum <n>^{2s} |f(n)|^2)^{1/2} with <n> = max(1, |n|), over the
/// stored band; inner products are normalized as (1/2pi) int f conj(g).
double sobolev_norm(const RealField& f, double s);
double sobolev_norm(const HardyField& f, double s);

/// Orthogonal projection onto H_+ (drops negative modes).
HardyField szego_project(const RealField& f);

/// Hilbert transform: f(n) -> -i sign(n) f(n), sign(0) = 0.
RealField hilbert_apply(const RealField& f);

/// Toeplitz action T_u f = Pi(u f), truncated at the band of f.
/// Uses a zero-padded FFT convolution of length >= 3N+1, exact on the band.
HardyField toeplitz_apply(const RealField& u, const HardyField& f);

/// Evaluate a Hardy function at |z| < 1 (Horner).  Rejects |z| >= 1.
cplx disc_eval(const HardyField& f, cplx z);

/// One-gap family: u_hat(n) = eps q^{n-1} for n >= 1, mean zero.
/// eps = q gives the traveling-wave potential u_{0,q}; smaller eps scales it.
/// Requires 0 < q < 1 and 0 < eps <= q.
RealField one_gap_potential(double q, double eps, int truncation);
RealField one_gap_potential(double q, int truncation);  // eps = q

/// <f|g> = sum_n f(n) conj(g(n)) over the common band (real fields include
/// negative modes).
cplx inner_product(const RealField& f, const RealField& g);
cplx inner_product(const HardyField& f, const HardyField& g);
cplx inner_product(const RealField& f, const HardyField& g);

}  // namespace bo

#endif
