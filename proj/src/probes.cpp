#include "bo/probes.hpp"

#include <algorithm>
#include <cmath>

#include "bo/errors.hpp"
#include "bo/fft.hpp"
#include "bo/finite_gap.hpp"
#include "bo/flow.hpp"
#include "bo/rng.hpp"

namespace bo {

OrbitDistance orbit_distance(const RealField& f, const RealField& g, double s) {
    const int N = std::max(f.truncation(), g.truncation());
    // ||f - g(.+tau)||^2 = A - 2 Re C(tau), C(tau) = sum_n w_n f(n) conj(g(n)) e^{-in tau}
    std::vector<cplx> c(N + 1);
    double A = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double w = std::pow(std::max(1, n), 2.0 * s);
        const double mult = n == 0 ? 1.0 : 2.0;
        A += mult * w * (std::norm(f.coeff(n)) + std::norm(g.coeff(n)));
        c[n] = w * f.coeff(n) * std::conj(g.coeff(n));
    }
    auto C_of = [&](double tau) {
        cplx acc(0.0);
        for (int n = 1; n <= N; ++n) acc += c[n] * std::polar(1.0, -n * tau);
        return c[0].real() + 2.0 * acc.real();
    };
    auto dC_of = [&](double tau) {  // derivative in tau
        cplx acc(0.0);
        for (int n = 1; n <= N; ++n) acc += cplx(0.0, -n) * c[n] * std::polar(1.0, -n * tau);
        return 2.0 * acc.real();
    };

    // grid pass: C on 8N points with one FFT
    const std::size_t G = fft_good_size(static_cast<std::size_t>(8 * (N + 1)));
    std::vector<cplx> padded(G, cplx(0.0));
    for (int n = 0; n <= N; ++n) padded[n] = c[n];
    auto Cg = fft_forward(padded);  // Cg[j] = sum_n c[n] e^{-2pi i nj/G}
    // C(tau_j) = 2 Re Cg[j] - c_0 (the n = 0 term enters Cg once)
    std::size_t jbest = 0;
    double Cbest = -1e300;
    for (std::size_t j = 0; j < G; ++j) {
        const double Cval = 2.0 * Cg[j].real() - c[0].real();
        if (Cval > Cbest) { Cbest = Cval; jbest = j; }
    }
    double tau = 2.0 * M_PI * static_cast<double>(jbest) / static_cast<double>(G);
    const double h = 2.0 * M_PI / static_cast<double>(G);

    // parabolic fit through the three neighboring grid values of C
    {
        const std::size_t jm = (jbest + G - 1) % G, jp = (jbest + 1) % G;
        const double Cm = 2.0 * Cg[jm].real() - c[0].real();
        const double Cp = 2.0 * Cg[jp].real() - c[0].real();
        const double denom = Cm - 2.0 * Cbest + Cp;
        if (std::abs(denom) > 1e-300) tau += h * 0.5 * (Cm - Cp) / denom;
    }
    // Newton on C'(tau) = 0 (maximizing C)
    for (int it = 0; it < 4; ++it) {
        const double d1 = dC_of(tau);
        // second derivative
        cplx acc(0.0);
        for (int n = 1; n <= N; ++n) acc += cplx(-double(n) * n, 0.0) * c[n] * std::polar(1.0, -n * tau);
        const double d2 = 2.0 * acc.real();
        if (std::abs(d2) < 1e-300) break;
        tau -= d1 / d2;
    }
    const double Cref = C_of(tau);
    OrbitDistance out;
    if (Cref >= Cbest) {
        out.tau = tau;
        out.distance = std::sqrt(std::max(A - 2.0 * Cref, 0.0));
    } else {  // refinement may not improve; keep the grid winner
        out.tau = 2.0 * M_PI * static_cast<double>(jbest) / static_cast<double>(G);
        out.distance = std::sqrt(std::max(A - 2.0 * Cbest, 0.0));
    }
    return out;
}

StabilityReport stability_probe(double q, double delta, double s, double t_max,
                                const StabilityOptions& opt) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("stability_probe: q in (0,1)");
    if (delta < 0.0) throw DomainError("stability_probe: delta >= 0");
    const int N = opt.truncation;
    const RealField u0 = one_gap_potential(q, N);

    RealField v0 = u0;
    if (delta > 0.0) {
        CounterRng rng(opt.seed);
        std::vector<cplx> modes(N + 1, cplx(0.0));
        for (int n = 1; n <= std::min(opt.pert_band, N); ++n) modes[n] = rng.cnormal();
        RealField pert = RealField::from_nonneg_modes(std::move(modes));
        pert *= delta / sobolev_norm(pert, s);
        v0 += pert;
    }

    BirkhoffState state = birkhoff_forward(v0);
    StabilityReport rep;
    rep.delta = delta;
    for (int i = 0; i < opt.n_times; ++i) {
        const double t = t_max * static_cast<double>(i) / std::max(1, opt.n_times - 1);
        RealField vt = reconstruct(quadrature_evolve(state, t), N);
        const auto d = orbit_distance(vt, u0, s);
        rep.times.push_back(t);
        rep.dist.push_back(d.distance);
        rep.sup = std::max(rep.sup, d.distance);
    }
    rep.ratio = delta > 0.0 ? rep.sup / delta : 0.0;
    return rep;
}

RecurrenceReport recurrence_probe(const BirkhoffState& state, double c, double horizon, double eps,
                                  const RecurrenceOptions& opt) {
    if (!(horizon > 0.0 && eps > 0.0)) throw DomainError("recurrence_probe: bad horizon/eps");
    const FrequencyVector om = frequencies(state, c);
    double om_max = 0.0;
    for (double w : om.omega) om_max = std::max(om_max, std::abs(w));

    RecurrenceReport rep;
    const RealField f0 = state.gaps() > 0 ? reconstruct(state, opt.truncation) : RealField(opt.truncation);

    auto spread = [&](double t) {
        double g = 0.0;
        for (double w : om.omega) g = std::max(g, 2.0 * std::abs(std::sin(0.5 * w * t)));
        return g;
    };

    if (om.omega.empty() || om_max == 0.0) {  // zero state: every t is a return
        rep.found = true;
        const double dt = horizon / (opt.max_hits + 1);
        for (int i = 1; i <= opt.max_hits; ++i) {
            rep.return_times.push_back(i * dt);
            rep.phase_residuals.push_back(0.0);
            rep.return_distance.push_back(0.0);
        }
        return rep;
    }

    const double dt = opt.grid_dt > 0.0 ? opt.grid_dt : eps / (2.0 * om_max);
    bool inside = false;
    double window_start = 0.0;
    for (double t = dt; t <= horizon && static_cast<int>(rep.return_times.size()) < opt.max_hits;
         t += dt) {
        const bool hit = spread(t) < eps;
        if (hit && !inside) { inside = true; window_start = t; }
        if ((!hit || t + dt > horizon) && inside) {
            inside = false;
            // ternary search for the local min of the spread on the window
            double a = std::max(window_start - dt, dt / 2), b = std::min(t + dt, horizon);
            for (int it = 0; it < 200; ++it) {
                const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
                if (spread(m1) < spread(m2)) b = m2; else a = m1;
            }
            const double tstar = 0.5 * (a + b);
            rep.return_times.push_back(tstar);
            rep.phase_residuals.push_back(spread(tstar));
            RealField ft = reconstruct(quadrature_evolve(state, tstar, c), opt.truncation);
            rep.return_distance.push_back(sobolev_norm(ft - f0, 0.0));
        }
    }
    rep.found = !rep.return_times.empty();
    return rep;
}

NormTrackReport normtrack(const RealField& v0, const std::vector<double>& s_list, double t_max,
                          const NormTrackOptions& opt) {
    NormTrackReport rep;
    FlowSpec spec;
    for (int i = 0; i < opt.n_times; ++i)
        spec.t_grid.push_back(t_max * static_cast<double>(i) / std::max(1, opt.n_times - 1));
    if (spec.t_grid.front() == 0.0 && spec.t_grid.size() > 1 && spec.t_grid[1] == 0.0)
        throw DomainError("normtrack: degenerate grid");
    Trajectory tq = evolve_potential(v0, spec);
    rep.times = tq.times;
    rep.norms.assign(s_list.size(), {});
    rep.sup.assign(s_list.size(), 0.0);
    for (std::size_t j = 0; j < s_list.size(); ++j) {
        for (const auto& f : tq.fields) {
            const double v = sobolev_norm(f, s_list[j]);
            rep.norms[j].push_back(v);
            rep.sup[j] = std::max(rep.sup[j], v);
        }
    }
    const long steps = std::lround(t_max / opt.direct_dt);
    if (steps > 0 && steps <= opt.max_direct_steps) {
        FlowSpec ds;
        ds.method = FlowMethod::direct;
        ds.dt = opt.direct_dt;
        ds.t_grid = {t_max};
        Trajectory td = direct_integrate(v0, ds);
        rep.direct_ran = true;
        rep.direct_mean_drift = std::abs(td.fields.back().mean() - v0.mean());
        rep.direct_l2_drift = std::abs(sobolev_norm(td.fields.back(), 0.0) - sobolev_norm(v0, 0.0));
    }
    return rep;
}

}  // namespace bo
