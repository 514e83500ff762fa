#include "bo/field.hpp"

#include <algorithm>
#include <cmath>

#include "bo/errors.hpp"
#include "bo/fft.hpp"

namespace bo {

RealField::RealField(int truncation) : n_(truncation), pos_(truncation + 1, cplx(0.0)) {
    if (truncation < 0) throw DomainError("RealField: negative truncation");
}

RealField RealField::from_nonneg_modes(std::vector<cplx> modes) {
    if (modes.empty()) throw DomainError("RealField: empty mode list");
    double scale = 0.0;
    for (const auto& c : modes) scale = std::max(scale, std::abs(c));
    if (std::abs(modes[0].imag()) > 1e-12 * std::max(1.0, scale))
        throw DomainError("RealField: mode 0 must be real");
    modes[0] = cplx(modes[0].real(), 0.0);
    RealField f(static_cast<int>(modes.size()) - 1);
    f.pos_ = std::move(modes);
    return f;
}

RealField RealField::from_full_spectrum(const std::vector<cplx>& full) {
    if (full.size() % 2 == 0) throw DomainError("RealField: full spectrum must have odd length");
    const int N = static_cast<int>(full.size() / 2);
    double scale = 0.0, asym = 0.0;
    for (const auto& c : full) scale = std::max(scale, std::abs(c));
    std::vector<cplx> pos(N + 1);
    for (int n = 0; n <= N; ++n) {
        const cplx a = full[N + n];
        const cplx b = std::conj(full[N - n]);
        asym = std::max(asym, std::abs(a - b));
        pos[n] = 0.5 * (a + b);  // symmetrize
    }
    if (asym > 1e-12 * std::max(1.0, scale))
        throw DomainError("RealField: Hermitian asymmetry exceeds 1e-12 relative");
    pos[0] = cplx(pos[0].real(), 0.0);
    RealField f(N);
    f.pos_ = std::move(pos);
    return f;
}

cplx RealField::coeff(int n) const {
    const int a = std::abs(n);
    if (a > n_) return {0.0, 0.0};
    return n >= 0 ? pos_[a] : std::conj(pos_[a]);
}

void RealField::set_mode(int n, cplx v) {
    if (n < 0 || n > n_) throw DomainError("RealField::set_mode: mode out of range");
    pos_[n] = (n == 0) ? cplx(v.real(), 0.0) : v;
}

RealField& RealField::operator+=(const RealField& o) {
    if (o.n_ > n_) pos_.resize(o.n_ + 1, cplx(0.0)), n_ = o.n_;
    for (int n = 0; n <= o.n_; ++n) pos_[n] += o.pos_[n];
    return *this;
}

RealField& RealField::operator-=(const RealField& o) {
    if (o.n_ > n_) pos_.resize(o.n_ + 1, cplx(0.0)), n_ = o.n_;
    for (int n = 0; n <= o.n_; ++n) pos_[n] -= o.pos_[n];
    return *this;
}

RealField& RealField::operator*=(double a) {
    for (auto& c : pos_) c *= a;
    return *this;
}

RealField RealField::translated(double a) const {
    RealField out(n_);
    for (int n = 0; n <= n_; ++n) out.pos_[n] = pos_[n] * std::polar(1.0, n * a);
    out.pos_[0] = cplx(pos_[0].real(), 0.0);
    return out;
}

std::vector<double> RealField::grid_values(std::size_t m) const {
    std::vector<cplx> spec(m, cplx(0.0));
    const int K = std::min<int>(n_, static_cast<int>(m / 2) - 1);
    for (int n = 0; n <= K; ++n) spec[n] = pos_[n];
    for (int n = 1; n <= K; ++n) spec[m - n] = std::conj(pos_[n]);
    auto phys = fft_inverse(spec);  // e^{+inx} convention on the grid
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = phys[j].real();
    return out;
}

double sobolev_norm(const RealField& f, double s) {
    double sum = std::norm(f.coeff(0));
    for (int n = 1; n <= f.truncation(); ++n)
        sum += 2.0 * std::pow(static_cast<double>(n), 2.0 * s) * std::norm(f.coeff(n));
    return std::sqrt(sum);
}

double sobolev_norm(const HardyField& f, double s) {
    double sum = std::norm(f.coeff(0));
    for (int n = 1; n <= f.truncation(); ++n)
        sum += std::pow(static_cast<double>(n), 2.0 * s) * std::norm(f.coeff(n));
    return std::sqrt(sum);
}

HardyField szego_project(const RealField& f) { return HardyField(f.nonneg_modes()); }

RealField hilbert_apply(const RealField& f) {
    std::vector<cplx> modes(f.nonneg_modes());
    modes[0] = 0.0;
    const cplx mi(0.0, -1.0);
    for (std::size_t n = 1; n < modes.size(); ++n) modes[n] *= mi;
    return RealField::from_nonneg_modes(std::move(modes));
}

HardyField toeplitz_apply(const RealField& u, const HardyField& f) {
    const int N = f.truncation();
    const int Nu = u.truncation();
    // linear convolution of u (modes -Nu..Nu) with f (0..N), band 0..N kept
    const std::size_t L = fft_good_size(static_cast<std::size_t>(2 * Nu + N + 2));
    std::vector<cplx> a(L, cplx(0.0)), b(L, cplx(0.0));
    for (int n = 0; n <= Nu; ++n) a[n] = u.coeff(n);
    for (int n = 1; n <= Nu; ++n) a[L - n] = u.coeff(-n);
    for (int n = 0; n <= N; ++n) b[n] = f.coeff(n);
    auto fa = fft_forward(a);
    auto fb = fft_forward(b);
    for (std::size_t i = 0; i < L; ++i) fa[i] *= fb[i];
    auto prod = fft_inverse(fa);
    std::vector<cplx> out(N + 1);
    const double inv = 1.0 / static_cast<double>(L);
    for (int n = 0; n <= N; ++n) out[n] = prod[n] * inv;
    return HardyField(std::move(out));
}

cplx disc_eval(const HardyField& f, cplx z) {
    if (std::abs(z) >= 1.0) throw DomainError("disc_eval: |z| must be < 1");
    cplx acc(0.0);
    for (int n = f.truncation(); n >= 0; --n) acc = acc * z + f.coeff(n);
    return acc;
}

RealField one_gap_potential(double q, double eps, int truncation) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("one_gap_potential: q must be in (0,1)");
    if (!(eps > 0.0 && eps <= q)) throw DomainError("one_gap_potential: eps must be in (0,q]");
    std::vector<cplx> modes(truncation + 1, cplx(0.0));
    double p = eps;  // eps * q^{n-1}
    for (int n = 1; n <= truncation; ++n) {
        modes[n] = p;
        p *= q;
    }
    return RealField::from_nonneg_modes(std::move(modes));
}

RealField one_gap_potential(double q, int truncation) { return one_gap_potential(q, q, truncation); }

cplx inner_product(const RealField& f, const RealField& g) {
    const int N = std::max(f.truncation(), g.truncation());
    cplx sum = f.coeff(0) * std::conj(g.coeff(0));
    for (int n = 1; n <= N; ++n) {
        sum += f.coeff(n) * std::conj(g.coeff(n));
        sum += f.coeff(-n) * std::conj(g.coeff(-n));
    }
    return sum;
}

cplx inner_product(const HardyField& f, const HardyField& g) {
    const int N = std::max(f.truncation(), g.truncation());
    cplx sum(0.0);
    for (int n = 0; n <= N; ++n) sum += f.coeff(n) * std::conj(g.coeff(n));
    return sum;
}

cplx inner_product(const RealField& f, const HardyField& g) {
    const int N = std::max(f.truncation(), g.truncation());
    cplx sum(0.0);
    for (int n = 0; n <= N; ++n) sum += f.coeff(n) * std::conj(g.coeff(n));
    return sum;
}

}  // namespace bo
