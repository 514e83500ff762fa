#include "bo/birkhoff.hpp"

#include <cmath>
#include <string>

#include "bo/errors.hpp"

namespace bo {
namespace {

void derive_from_actions(const std::vector<double>& gamma, std::vector<double>& lambda,
                         std::vector<double>& kappa, std::vector<double>& mu_ratio) {
    const int P = static_cast<int>(gamma.size());
    lambda.assign(P + 1, 0.0);
    for (int n = 0; n <= P; ++n) {
        double tail = 0.0;
        for (int k = n + 1; k <= P; ++k) tail += gamma[k - 1];
        lambda[n] = static_cast<double>(n) - tail;
    }
    kappa.assign(P + 1, 0.0);
    {
        double prod = 1.0;
        for (int p = 1; p <= P; ++p) prod *= 1.0 - gamma[p - 1] / (lambda[p] - lambda[0]);
        kappa[0] = prod;
    }
    for (int n = 1; n <= P; ++n) {
        double prod = 1.0;
        for (int p = 1; p <= P; ++p) {
            if (p == n) continue;
            const double factor = 1.0 - gamma[p - 1] / (lambda[p] - lambda[n]);
            if (factor <= 0.0)
                throw NonPositiveKappa("kappa_" + std::to_string(n) + ": nonpositive factor");
            prod *= factor;
        }
        kappa[n] = prod / (lambda[n] - lambda[0]);
        if (kappa[n] <= 0.0) throw NonPositiveKappa("kappa_" + std::to_string(n) + " <= 0");
    }
    mu_ratio.assign(P, 0.0);
    for (int n = 0; n < P; ++n) {
        double prod = 1.0;
        for (int p = 1; p <= P; ++p) {
            if (p == n + 1) continue;
            prod *= 1.0 - gamma[p - 1] / (lambda[p] - lambda[n] - 1.0);
        }
        mu_ratio[n] = (lambda[n] + 1.0 - lambda[0]) / prod;
        if (!(mu_ratio[n] > 0.0))
            throw NonPositiveKappa("mu_ratio_" + std::to_string(n + 1) + " <= 0");
    }
}

}  // namespace

BirkhoffState::BirkhoffState(std::vector<cplx> zeta, double mean_c)
    : zeta_(std::move(zeta)), mean_c_(mean_c) {
    const int P = static_cast<int>(zeta_.size());
    gamma_.resize(P);
    for (int n = 0; n < P; ++n) {
        gamma_[n] = std::norm(zeta_[n]);
        if (!std::isfinite(gamma_[n])) throw MissingGap("BirkhoffState: invalid action");
    }
    derive_from_actions(gamma_, lambda_, kappa_, mu_ratio_);
}

BirkhoffState BirkhoffState::rotated(const std::vector<double>& theta) const {
    if (theta.size() != zeta_.size()) throw DomainError("rotated: phase count mismatch");
    BirkhoffState out(*this);
    for (std::size_t n = 0; n < zeta_.size(); ++n)
        out.zeta_[n] = zeta_[n] * std::polar(1.0, theta[n]);
    return out;  // gamma_, lambda_, kappa_, mu_ratio_ copied bitwise
}

std::vector<double> kappa_sequence(const LaxSpectrum& spec) {
    const int T = spec.n_trust;
    std::vector<double> kap(T + 1);
    {
        double prod = 1.0;
        for (int p = 1; p <= T; ++p) prod *= 1.0 - spec.gamma[p - 1] / (spec.lambda(p) - spec.lambda(0));
        kap[0] = prod;
    }
    for (int n = 1; n <= T; ++n) {
        double prod = 1.0;
        for (int p = 1; p <= T; ++p) {
            if (p == n) continue;
            const double factor = 1.0 - spec.gamma[p - 1] / (spec.lambda(p) - spec.lambda(n));
            if (factor <= 0.0)
                throw NonPositiveKappa("kappa_sequence: nonpositive factor at n=" + std::to_string(n));
            prod *= factor;
        }
        kap[n] = prod / (spec.lambda(n) - spec.lambda(0));
    }
    return kap;
}

std::vector<double> mu_ratio_sequence(const LaxSpectrum& spec) {
    const int T = spec.n_trust;
    std::vector<double> r(T);
    for (int n = 0; n < T; ++n) {
        double prod = 1.0;
        for (int p = 1; p <= T; ++p) {
            if (p == n + 1) continue;
            prod *= 1.0 - spec.gamma[p - 1] / (spec.lambda(p) - spec.lambda(n) - 1.0);
        }
        if (prod <= 0.0)
            throw NonPositiveKappa("mu_ratio_sequence: nonpositive product at n=" + std::to_string(n));
        r[n] = (spec.lambda(n) + 1.0 - spec.lambda(0)) / prod;
    }
    return r;
}

BirkhoffState birkhoff_from_spectrum(const LaxSpectrum& spec, double mean_c,
                                     const BirkhoffOptions& opt) {
    const int T = spec.n_trust;
    // retained P: smallest with tail action below tol_tail
    int P = T;
    double tail = 0.0;
    while (P > 0 && tail + spec.gamma[P - 1] < opt.tol_tail) tail += spec.gamma[--P];

    auto kap = kappa_sequence(spec);
    std::vector<cplx> zeta(P);
    for (int n = 1; n <= P; ++n) {
        if (spec.gamma[n - 1] < opt.tol_tail)
            zeta[n - 1] = 0.0;  // vanishing gap: phase undefined, store exact zero
        else
            zeta[n - 1] = spec.ip_one(n) / std::sqrt(kap[n]);
    }
    BirkhoffState state(std::move(zeta), mean_c);
    state.tail_action = tail;
    return state;
}

BirkhoffState birkhoff_forward(const RealField& u, const BirkhoffOptions& opt) {
    const double c = u.mean();
    RealField u0 = u;
    u0.set_mode(0, 0.0);
    LaxSpectrum spec = eigendecompose(assemble_lax(u0), opt.lax);
    return birkhoff_from_spectrum(spec, c, opt);
}

FrequencyVector frequencies(const BirkhoffState& state, double c) {
    const int P = state.gaps();
    FrequencyVector out;
    out.c = c;
    out.omega.resize(P);
    for (int n = 1; n <= P; ++n) {
        double s = 0.0;
        for (int k = 1; k <= P; ++k) s += std::min(n, k) * state.gamma(k);
        out.omega[n - 1] = static_cast<double>(n) * n - 2.0 * s + 2.0 * c * n;
    }
    return out;
}

double hamiltonian_B(const BirkhoffState& state) {
    const int P = state.gaps();
    double h = 0.0;
    for (int k = 1; k <= P; ++k) h += static_cast<double>(k) * k * state.gamma(k);
    double tail = 0.0;
    for (int k = P; k >= 1; --k) {
        tail += state.gamma(k);  // sum_{p>=k} gamma_p
        h -= tail * tail;
    }
    return h;
}

double trace_formula(const BirkhoffState& state) {
    double s = 0.0;
    for (int n = 1; n <= state.gaps(); ++n) s += n * state.gamma(n);
    return 2.0 * s;
}

}  // namespace bo
