#include "bo/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bo/errors.hpp"
#include "bo/fft.hpp"

namespace bo {
namespace {

void check_grid(const std::vector<double>& t) {
    if (t.empty()) throw DomainError("FlowSpec: empty time grid");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i] < t[i + 1])) throw DomainError("FlowSpec: t_grid must be strictly increasing");
    if (t.front() < 0.0) throw DomainError("FlowSpec: negative output time");
}

FlowDiagnostics diagnose(const RealField& f, const FlowSpec& spec, const BirkhoffState* state) {
    FlowDiagnostics d;
    d.mean = f.mean();
    d.l2 = sobolev_norm(f, 0.0);
    for (double s : spec.diag_s) d.hs.push_back(sobolev_norm(f, s));
    if (spec.diag_gaps) {
        if (state) d.gaps = state->gammas();
        else d.gaps = birkhoff_forward(f, spec.birkhoff).gammas();
    }
    return d;
}

}  // namespace

BirkhoffState quadrature_evolve(const BirkhoffState& state, double t, double c) {
    const FrequencyVector om = frequencies(state, c);
    std::vector<double> theta(om.omega.size());
    for (std::size_t n = 0; n < theta.size(); ++n) theta[n] = t * om.omega[n];
    return state.rotated(theta);
}

Trajectory evolve_potential(const RealField& v0, const FlowSpec& spec) {
    check_grid(spec.t_grid);
    if (spec.method == FlowMethod::direct) return direct_integrate(v0, spec);

    const double c = v0.mean();
    const int N = v0.truncation();
    BirkhoffState state = birkhoff_forward(v0, spec.birkhoff);

    Trajectory traj;
    traj.tail_action = state.tail_action;
    for (double t : spec.t_grid) {
        BirkhoffState st = quadrature_evolve(state, t, 0.0);
        RealField u = reconstruct(st, N);       // mean-zero flow at time t (mean() of state is c,
        u.set_mode(0, 0.0);                     // added back after the Galilean shift)
        RealField v = u.translated(-2.0 * c * t);
        v.set_mode(0, c);
        traj.times.push_back(t);
        traj.diagnostics.push_back(diagnose(v, spec, &st));
        traj.states.push_back(std::move(st));
        traj.fields.push_back(std::move(v));
    }
    return traj;
}

Trajectory direct_integrate(const RealField& v0, const FlowSpec& spec) {
    check_grid(spec.t_grid);
    const int N = v0.truncation();
    const double dt = spec.dt;
    if (!(dt > 0.0)) throw DomainError("direct_integrate: dt must be positive");
    if (dt * N * N > 2.8)
        throw StepTooLarge("direct_integrate: dt * N^2 = " + std::to_string(dt * N * N) + " > 2.8");

    const std::size_t M = fft_good_size(static_cast<std::size_t>(3 * N + 2));
    const int keep = std::min<int>(N, static_cast<int>(spec.dealias * (M / 2)));

    auto mode_of = [&](std::size_t i) -> int {
        return i <= M / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(M);
    };

    std::vector<cplx> v(M, cplx(0.0));
    for (int n = 0; n <= N; ++n) v[n] = v0.coeff(n);
    for (int n = 1; n <= N; ++n) v[M - n] = v0.coeff(-n);

    std::vector<cplx> sym(M), Eh(M), Ef(M);
    for (std::size_t i = 0; i < M; ++i) {
        const int n = mode_of(i);
        sym[i] = cplx(0.0, static_cast<double>(n) * std::abs(n));  // i n|n|
        Eh[i] = std::exp(sym[i] * (dt / 2.0));
        Ef[i] = Eh[i] * Eh[i];
    }

    auto nonlinear = [&](const std::vector<cplx>& vh) {
        auto phys = fft_inverse(vh);
        for (auto& p : phys) p *= p;
        auto w = fft_forward(phys);
        const double inv = 1.0 / static_cast<double>(M);
        std::vector<cplx> out(M, cplx(0.0));
        for (std::size_t i = 0; i < M; ++i) {
            const int n = mode_of(i);
            if (std::abs(n) > keep) continue;  // dealias
            out[i] = cplx(0.0, -static_cast<double>(n)) * w[i] * inv;  // -d_x(v^2)
        }
        return out;
    };

    auto collect = [&](double t) {
        std::vector<cplx> modes(N + 1);
        for (int n = 0; n <= N; ++n) modes[n] = v[n];
        modes[0] = cplx(modes[0].real(), 0.0);
        RealField f = RealField::from_nonneg_modes(std::move(modes));
        return f;
    };

    Trajectory traj;
    double t = 0.0;
    std::size_t steps_done = 0;
    std::vector<cplx> k1, k2, k3, k4, tmp(M);
    for (double tout : spec.t_grid) {
        const long nsteps = std::lround((tout - t) / dt);
        for (long s = 0; s < nsteps; ++s) {
            k1 = nonlinear(v);
            for (std::size_t i = 0; i < M; ++i) tmp[i] = Eh[i] * (v[i] + (dt / 2.0) * k1[i]);
            k2 = nonlinear(tmp);
            for (std::size_t i = 0; i < M; ++i) tmp[i] = Eh[i] * v[i] + (dt / 2.0) * k2[i];
            k3 = nonlinear(tmp);
            for (std::size_t i = 0; i < M; ++i) tmp[i] = Ef[i] * v[i] + dt * Eh[i] * k3[i];
            k4 = nonlinear(tmp);
            for (std::size_t i = 0; i < M; ++i)
                v[i] = Ef[i] * v[i] +
                       (dt / 6.0) * (Ef[i] * k1[i] + 2.0 * Eh[i] * (k2[i] + k3[i]) + k4[i]);
            if (++steps_done % 256 == 0) {
                double l2 = 0.0;
                for (const auto& c : v) l2 += std::norm(c);
                if (!(l2 < 1e16)) throw BlowupDetected("direct_integrate: norm exceeds 1e8");
            }
        }
        t += static_cast<double>(nsteps) * dt;
        if (std::abs(t - tout) > 1e-9 * std::max(1.0, std::abs(tout)))
            throw DomainError("direct_integrate: output time " + std::to_string(tout) +
                              " is not a multiple of dt");
        RealField f = collect(t);
        traj.times.push_back(t);
        traj.diagnostics.push_back(diagnose(f, spec, nullptr));
        traj.fields.push_back(std::move(f));
    }
    return traj;
}

CompareReport compare_trajectories(const Trajectory& a, const Trajectory& b, double s) {
    if (a.times.size() != b.times.size()) throw GridMismatch("compare_trajectories: grid size");
    for (std::size_t i = 0; i < a.times.size(); ++i)
        if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i])))
            throw GridMismatch("compare_trajectories: time grids differ");

    CompareReport rep;
    rep.times = a.times;
    std::vector<double> g0a, g0b;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        rep.distance.push_back(sobolev_norm(a.fields[i] - b.fields[i], s));
        auto ga = i < a.states.size() ? a.states[i].gammas() : birkhoff_forward(a.fields[i]).gammas();
        auto gb = i < b.states.size() ? b.states[i].gammas() : birkhoff_forward(b.fields[i]).gammas();
        if (i == 0) { g0a = ga; g0b = gb; }
        double da = 0.0, db = 0.0;
        for (std::size_t n = 0; n < std::min(ga.size(), g0a.size()); ++n)
            da = std::max(da, std::abs(ga[n] - g0a[n]));
        for (std::size_t n = 0; n < std::min(gb.size(), g0b.size()); ++n)
            db = std::max(db, std::abs(gb[n] - g0b[n]));
        rep.gap_drift_a.push_back(da);
        rep.gap_drift_b.push_back(db);
    }
    rep.max_distance = *std::max_element(rep.distance.begin(), rep.distance.end());
    return rep;
}

double bo_energy(const RealField& u) {
    const int N = u.truncation();
    double quad = 0.0;
    for (int n = 1; n <= N; ++n) quad += static_cast<double>(n) * std::norm(u.coeff(n));
    // (1/2pi) int u^3 = sum_m (u^2)^(m) conj(u(m)); exact padded convolution
    const std::size_t M = fft_good_size(static_cast<std::size_t>(4 * N + 2));
    std::vector<cplx> spec(M, cplx(0.0));
    for (int n = 0; n <= N; ++n) spec[n] = u.coeff(n);
    for (int n = 1; n <= N; ++n) spec[M - n] = u.coeff(-n);
    auto phys = fft_inverse(spec);
    for (auto& p : phys) p *= p;
    auto w = fft_forward(phys);
    const double inv = 1.0 / static_cast<double>(M);
    cplx cubic(0.0);
    for (int n = -N; n <= N; ++n) {
        const std::size_t i = n >= 0 ? static_cast<std::size_t>(n) : M + n;
        cubic += w[i] * inv * std::conj(u.coeff(n));
    }
    return quad - cubic.real() / 3.0;
}

}  // namespace bo
