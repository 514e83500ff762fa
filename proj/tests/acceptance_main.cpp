// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bo/birkhoff.hpp"
#include "bo/field.hpp"
#include "bo/finite_gap.hpp"
#include "bo/flow.hpp"
#include "bo/illposed.hpp"
#include "bo/lax.hpp"
#include "bo/probes.hpp"
#include "bo/rng.hpp"

using namespace bo;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

void run(int idx, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [pass, detail] = body();
        report(idx, name, pass, detail);
    } catch (const std::exception& e) {
        report(idx, name, false, std::string("exception: ") + e.what());
    }
}

std::string metric(const char* label, double value, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s=%.3e, tol=%.1e", label, value, tol);
    return buf;
}

RealField random_band_field(std::uint64_t seed, int band, int N) {
    CounterRng rng(seed);
    std::vector<cplx> m(N + 1, cplx(0.0));
    for (int n = 1; n <= band; ++n) m[n] = 0.4 * rng.cnormal() * std::pow(0.65, n);
    return RealField::from_nonneg_modes(std::move(m));
}

double l2_dist(const RealField& a, const RealField& b) { return sobolev_norm(a - b, 0.0); }

}  // namespace

int main() {
    // ---- 1: one-gap spectral identities --------------------------------
    run(1, "one-gap spectral identities (q = 0.3, 0.5, 0.7)", [] {
        double worst = 0.0;
        for (double q : {0.3, 0.5, 0.7}) {
            const double g1 = q * q / (1.0 - q * q);
            BirkhoffState st = birkhoff_forward(one_gap_potential(q, 256));
            worst = std::max(worst, std::abs(st.gamma(1) - g1));
            for (int n = 2; n <= st.gaps(); ++n) worst = std::max(worst, st.gamma(n));
            worst = std::max(worst, std::abs(st.lambda(0) + g1));
            const double om1 = frequencies(st).omega[0];
            worst = std::max(worst, std::abs(om1 - (1.0 - 3.0 * q * q) / (1.0 - q * q)));
        }
        return std::make_pair(worst < 1e-8, metric("max_err", worst, 1e-8));
    });

    // ---- 2: trace formula ----------------------------------------------
    run(2, "trace formula on 10 seeded band-limited fields", [] {
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            RealField u = random_band_field(seed, 8, 128);
            const double n2 = sobolev_norm(u, 0.0);
            worst = std::max(worst, std::abs(n2 * n2 - trace_formula(birkhoff_forward(u))));
        }
        return std::make_pair(worst < 1e-8, metric("max_err", worst, 1e-8));
    });

    // ---- 3: generating-function identity --------------------------------
    run(3, "generating function: resolvent vs product, 20 points/fixture", [] {
        double worst = 0.0;
        std::vector<RealField> fixtures;
        for (double q : {0.3, 0.5, 0.7}) fixtures.push_back(one_gap_potential(q, 128));
        fixtures.push_back(random_band_field(21, 8, 128));
        fixtures.push_back(random_band_field(22, 8, 128));
        CounterRng rng(99);
        for (const auto& u : fixtures) {
            LaxSpectrum spec = eigendecompose(assemble_lax(u));
            for (int i = 0; i < 20; ++i) {
                const cplx lam(rng.uniform(-4.0, 4.0),
                               (i % 2 ? 1.0 : -1.0) * rng.uniform(0.25, 3.0));
                const cplx a = genfun_resolvent(u, lam).value;
                const cplx b = genfun_product(spec, lam).value;
                worst = std::max(worst, std::abs(a - b) / std::abs(a));
            }
        }
        return std::make_pair(worst < 1e-8, metric("max_rel_err", worst, 1e-8));
    });

    // ---- 4: two-gap closed forms -----------------------------------------
    run(4, "two-gap closed forms on the gamma grid", [] {
        const double grid[] = {0.1, 0.5, 1.0, 2.0, 5.0};
        const double p1 = 0.9, p2 = -2.1;
        double worst = 0.0;
        for (double g1 : grid)
            for (double g2 : grid) {
                BirkhoffState st(
                    {std::sqrt(g1) * std::polar(1.0, p1), std::sqrt(g2) * std::polar(1.0, p2)}, 0.0);
                const double k0 = (2 + g1) / ((1 + g1) * (2 + g1 + g2));
                const double k1 = 1.0 / ((1 + g1) * (1 + g2));
                worst = std::max(worst, std::abs(st.kappa(0) - k0));
                worst = std::max(worst, std::abs(st.kappa(1) - k1));
                FrequencyVector om = frequencies(st);
                worst = std::max(worst, std::abs(om.omega[0] - (1 - 2 * g1 - 2 * g2)));
                worst = std::max(worst, std::abs(om.omega[1] - (4 - 2 * g1 - 4 * g2)));
                TransferMatrix M = transfer_matrix(st);
                const cplx M00 = -std::sqrt(g1 * (2 + g1) * (1 + g1 + g2) / (2 + g1 + g2)) *
                                 std::polar(1.0, p1) / (1 + g1);
                const cplx M01 = std::sqrt((1 + g1 + g2) / (1 + g2)) / (1 + g1);
                const cplx M10 = -std::sqrt(g2 / (2 + g1 + g2)) * std::polar(1.0, p2) / (1 + g1);
                const cplx M11 = -std::sqrt(g1 * g2 * (2 + g1) / (1 + g2)) *
                                 std::polar(1.0, p2 - p1) / (1 + g1);
                worst = std::max(worst, std::abs(M.M(0, 0) - M00));
                worst = std::max(worst, std::abs(M.M(0, 1) - M01));
                worst = std::max(worst, std::abs(M.M(1, 0) - M10));
                worst = std::max(worst, std::abs(M.M(1, 1) - M11));
            }
        return std::make_pair(worst < 1e-12, metric("max_err", worst, 1e-12));
    });

    // ---- 5: round trips ---------------------------------------------------
    run(5, "forward/inverse round trips, 25 seeded states P <= 4", [] {
        CounterRng rng(7);
        double worst_act = 0.0, worst_l2 = 0.0;
        for (int trial = 0; trial < 25; ++trial) {
            const int P = 1 + static_cast<int>(rng.uniform() * 4.0);
            std::vector<cplx> zeta(P);
            for (int n = 0; n < P; ++n)
                zeta[n] = std::sqrt(rng.uniform(0.05, 1.5)) *
                          std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
            BirkhoffState st(zeta, 0.0);
            RealField u = reconstruct(st, 256);          // inverse
            BirkhoffState st2 = birkhoff_forward(u);     // forward
            for (int n = 1; n <= P; ++n)
                worst_act = std::max(worst_act,
                                     std::abs((n <= st2.gaps() ? st2.gamma(n) : 0.0) - st.gamma(n)));
            worst_l2 = std::max(worst_l2, l2_dist(reconstruct(st2, 256), u));
        }
        const bool pass = worst_act < 1e-6 && worst_l2 < 1e-6;
        return std::make_pair(pass, metric("max_action_err", worst_act, 1e-6) + ", " +
                                        metric("max_L2_err", worst_l2, 1e-6));
    });

    // ---- 6: flow cross-validation ------------------------------------------
    run(6, "two-gap flow: quadrature vs direct on [0, 1]", [] {
        BirkhoffState st({cplx(std::sqrt(0.5)), cplx(std::sqrt(0.25))}, 0.0);
        RealField v0 = reconstruct(st, 128);
        FlowSpec qs;
        for (int i = 1; i <= 10; ++i) qs.t_grid.push_back(0.1 * i);
        Trajectory tq = evolve_potential(v0, qs);
        FlowSpec ds;
        ds.method = FlowMethod::direct;
        ds.dt = 1e-4;
        ds.t_grid = qs.t_grid;
        Trajectory td = direct_integrate(v0, ds);
        CompareReport rep = compare_trajectories(tq, td, 0.0);
        double gap_drift = 0.0;
        for (double d : rep.gap_drift_b) gap_drift = std::max(gap_drift, d);
        double cons = 0.0;
        for (const auto& f : td.fields) {
            cons = std::max(cons, std::abs(f.mean() - v0.mean()));
            cons = std::max(cons, std::abs(sobolev_norm(f, 0.0) - sobolev_norm(v0, 0.0)));
        }
        const bool pass = rep.max_distance < 1e-4 && gap_drift < 1e-6 && cons < 1e-8;
        return std::make_pair(pass, metric("max_L2_dist", rep.max_distance, 1e-4) + ", " +
                                        metric("gap_drift", gap_drift, 1e-6) + ", " +
                                        metric("mean/L2_drift", cons, 1e-8));
    });

    // ---- 7: traveling wave by direct integration ----------------------------
    run(7, "direct integration of u_{0,0.5} vs exact traveling wave", [] {
        RealField u0 = one_gap_potential(0.5, 128);
        FlowSpec ds;
        ds.method = FlowMethod::direct;
        ds.dt = 1e-4;
        ds.t_grid = {1.0};
        Trajectory td = direct_integrate(u0, ds);
        const double err = l2_dist(td.fields.back(), u0.translated(1.0 / 3.0));
        return std::make_pair(err < 1e-6, metric("L2_err", err, 1e-6));
    });

    // ---- 8: F-function suite -------------------------------------------------
    run(8, "F suite: sign grid, unique root, Galerkin agreement", [] {
        for (double eps : {0.05, 0.1, 0.2, 0.3, 0.4})
            for (double q : {0.3, 0.5, 0.6, 0.75, 0.9}) {
                if (eps >= q) continue;
                if (!(eval_F(eps * q * q / (1.0 - q * q), eps, q) > 0.0))
                    return std::make_pair(false, std::string("F not positive at bracket end"));
            }
        const double mu = lambda0_root(0.3, 0.6);
        const double fval = std::abs(eval_F(mu, 0.3, 0.6));
        const double slope = eval_F_dmu(mu, 0.3, 0.6);
        LaxSpectrum spec = eigendecompose(assemble_lax(one_gap_potential(0.6, 0.3 * 0.6, 512)));
        const double diff = std::abs(spec.lambda(0) + mu);
        const bool pass = fval < 1e-10 && slope > 0.0 && diff < 1e-6;
        return std::make_pair(pass, metric("|F(mu*)|", fval, 1e-10) + ", " +
                                        metric("galerkin_diff", diff, 1e-6) +
                                        (slope > 0.0 ? ", dF/dmu>0" : ", dF/dmu<=0"));
    });

    // ---- 9 and 10 share the deep-ground-state data --------------------------
    struct DeepData {
        UkField uk;
        LaxSpectrum spec;
        BirkhoffState state;
    };
    std::vector<DeepData> deep;
    run(9, "deep ground state, k = 1, 2, 3", [&deep] {
        std::string detail;
        bool pass = true;
        for (int k : {1, 2, 3}) {
            UkField uk = build_uk(k);
            bool fresh = true;
            for (const auto& d : deep)
                if (d.uk.params.epsilon == uk.params.epsilon) {
                    deep.push_back({uk, d.spec, d.state});
                    fresh = false;
                    break;
                }
            if (fresh) {
                RealField u0 = uk.u;
                u0.set_mode(0, 0.0);
                LaxSpectrum spec = eigendecompose(assemble_lax(u0));
                BirkhoffState st = birkhoff_from_spectrum(spec, 0.0);
                deep.push_back({uk, std::move(spec), std::move(st)});
            }
            const auto& d = deep.back();
            int negatives = 0;
            for (int n = 0; n < d.spec.size(); ++n) negatives += d.spec.lambda(n) < 0.0;
            double tail = 0.0;
            for (int n = 2; n <= d.state.gaps(); ++n) tail += d.state.gamma(n);
            const double n2 = sobolev_norm(uk.u, -0.5);
            const double want = -2.0 * uk.params.epsilon * uk.params.epsilon *
                                std::log(1.0 - uk.params.q * uk.params.q);
            const bool ok = d.spec.lambda(0) < -static_cast<double>(k) && negatives == 1 &&
                            tail <= 1.0 + 1e-6 && std::abs(n2 * n2 - want) < 1e-6;
            if (!ok) pass = false;
            if (k == 3) {
                char buf[200];
                std::snprintf(buf, sizeof(buf),
                              "lambda0=%.6f, negatives=%d, sum_gamma_tail=%.6f, norm_err=%.2e",
                              d.spec.lambda(0), negatives, tail, std::abs(n2 * n2 - want));
                detail = buf;
            }
        }
        return std::make_pair(pass, detail);
    });

    run(10, "divergence witness: xi(0) and the windowed integral", [&deep] {
        if (deep.size() != 3) return std::make_pair(false, std::string("deep data missing"));
        bool pass = true;
        double worst0 = 0.0, worst_rem = 0.0, wlow = 1e300;
        for (const auto& d : deep) {
            XiSeries s;
            s.state = d.state;
            const int P = d.state.gaps();
            s.coef.resize(P);
            s.freq.resize(P);
            for (int n = 0; n < P; ++n) {
                s.coef[n] = -std::sqrt(d.state.mu_ratio(n) * d.state.kappa(n)) *
                            d.state.zeta(n + 1) * std::conj(d.state.zeta(n));
                s.freq[n] = 1.0 + 2.0 * d.state.lambda(n);
            }
            for (int i = 0; i <= 1000; ++i) s.times.push_back(i * 1e-3);
            s.xi.resize(s.times.size());
            for (std::size_t i = 0; i < s.times.size(); ++i) {
                cplx acc(0.0);
                for (int n = 0; n < P; ++n) acc += s.coef[n] * std::polar(1.0, s.freq[n] * s.times[i]);
                s.xi[i] = acc;
            }
            const double eq = d.uk.params.epsilon * d.uk.params.q;
            worst0 = std::max(worst0, std::abs(s.xi[0] - eq));
            WindowedIntegral w = windowed_integral(s, 0.0, 1.0, d.state.lambda(0));
            wlow = std::min(wlow, std::abs(w.integral));
            worst_rem = std::max(worst_rem, std::abs(w.integral - w.predicted) *
                                                std::abs(d.state.lambda(0)));
        }
        const double bar = 0.5 * std::sqrt(2.0);
        if (worst0 >= 1e-8 || wlow <= bar || worst_rem > 4.0) pass = false;
        return std::make_pair(pass, metric("xi0_err", worst0, 1e-8) + ", " +
                                        metric("|integral|_min", wlow, bar) + ", " +
                                        metric("remainder*|lambda0|", worst_rem, 4.0));
    });

    // ---- 11: Appendix-B style distributional limit ---------------------------
    run(11, "two-gap divergence limit: coefficients toward 2(-1)^n", [] {
        double prev = 1e300, final_rel = 0.0;
        bool monotone = true, in_disc = true;
        for (double g : {1.0, 10.0, 100.0, 1000.0}) {
            TwoGapDivergence d = two_gap_divergence(g, 0.0, 16);
            in_disc = in_disc && std::abs(d.q1) < 1.0 && std::abs(d.q2) < 1.0;
            double dev = 0.0;
            for (int n = 1; n <= 8; ++n)
                dev = std::max(dev, std::abs(d.field.coeff(n) - ((n % 2) ? -2.0 : 2.0)));
            if (dev >= prev) monotone = false;
            prev = dev;
            final_rel = dev / 2.0;
        }
        const bool pass = monotone && in_disc && final_rel < 1e-2;
        return std::make_pair(pass, metric("final_rel_dev", final_rel, 1e-2) +
                                        (monotone ? ", monotone" : ", NOT monotone") +
                                        (in_disc ? ", |q_i|<1" : ", factor escaped disc"));
    });

    // ---- 12: probe suite ------------------------------------------------------
    run(12, "probe suite: stability, recurrence, norm tracking", [] {
        StabilityOptions sopt;
        sopt.n_times = 11;
        StabilityReport zero = stability_probe(0.5, 0.0, 0.0, 10.0, sopt);

        RecurrenceReport r1 =
            recurrence_probe(birkhoff_forward(one_gap_potential(0.5, 256)), 0.0, 25.0, 1e-3);
        RecurrenceReport r2 =
            recurrence_probe(BirkhoffState({cplx(1.0), cplx(1.0)}, 0.0), 0.0, 10.0, 1e-3);

        NormTrackOptions nopt;
        nopt.n_times = 41;
        nopt.max_direct_steps = 0;
        NormTrackReport tw = normtrack(one_gap_potential(0.5, 128), {0.0, 1.0}, 30.0, nopt);
        double tw_var = 0.0;
        for (std::size_t j = 0; j < tw.norms.size(); ++j)
            for (double v : tw.norms[j])
                tw_var = std::max(tw_var, std::abs(v - tw.norms[j][0]));

        BirkhoffState tg({cplx(1.0), cplx(1.0)}, 0.0);
        RealField v0 = reconstruct(tg, 128);
        NormTrackOptions popt;
        popt.n_times = 629;
        popt.max_direct_steps = 0;
        NormTrackReport period = normtrack(v0, {1.0}, 2.0 * M_PI, popt);
        NormTrackOptions lopt;
        lopt.n_times = 1001;
        lopt.max_direct_steps = 0;
        NormTrackReport longer = normtrack(v0, {1.0}, 100.0, lopt);

        const bool ok_stability = zero.sup < 1e-10;
        const bool ok_rec = r1.found && std::abs(r1.return_times[0] - 6.0 * M_PI) < 1e-6 &&
                            r1.return_distance[0] < 1e-8 && r2.found &&
                            std::abs(r2.return_times[0] - 2.0 * M_PI) < 1e-6 &&
                            r2.return_distance[0] < 1e-8;
        const bool ok_norm = tw_var < 1e-12 && longer.sup[0] <= period.sup[0] + 1e-8;
        const bool pass = ok_stability && ok_rec && ok_norm;
        return std::make_pair(
            pass, metric("stability_delta0", zero.sup, 1e-10) + ", " +
                      metric("period_err", r1.found ? std::abs(r1.return_times[0] - 6 * M_PI) : 1.0,
                             1e-6) +
                      ", " + metric("norm_var", tw_var, 1e-12));
    });

    std::printf("%d/12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
