// bo: command-line driver for the Benjamin-Ono integrable-structure library.
//
// Global flags: --modes, --tol, --out, --jobs, --seed, --config FILE.
// A JSON config supplies defaults; explicit flags override it.  Every command
// writes manifest.json (inputs, version, seed, tolerances) plus its own
// report.json / CSV artifacts.  Exit codes: 0 ok, 1 numerical failure,
// 2 usage error.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "bo/birkhoff.hpp"
#include "bo/errors.hpp"
#include "bo/field.hpp"
#include "bo/finite_gap.hpp"
#include "bo/flow.hpp"
#include "bo/illposed.hpp"
#include "bo/io.hpp"
#include "bo/lax.hpp"
#include "bo/probes.hpp"
#include "bo/rng.hpp"

namespace fs = std::filesystem;
using namespace bo;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Global {
    int modes = 256;
    double tol = 1e-8;
    std::string out = "bo_out";
    int jobs = 1;
    std::uint64_t seed = 1;
    std::string config;
    json cfg;  // parsed --config contents
};

// flags override the config file; the config overrides built-in defaults
template <typename T>
void merge(const CLI::Option* opt, const json& cfg, const char* key, T& value) {
    if (opt != nullptr && opt->count() > 0) return;  // explicit flag wins
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

json manifest_base(const Global& g, const std::string& command, json params) {
    return json{{"version", kVersion},
                {"command", command},
                {"seed", g.seed},
                {"modes", g.modes},
                {"tolerances", {{"tol", g.tol}}},
                {"params", std::move(params)}};
}

RealField load_or_build_field(const Global& g, const std::string& input, double q, double eps) {
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw DomainError("cannot open field file: " + input);
        return real_field_from_json(json::parse(in));
    }
    if (!(q > 0.0)) throw DomainError("either --input or --q is required");
    return one_gap_potential(q, eps > 0.0 ? eps : q, g.modes);
}

BirkhoffState load_gaps(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open gaps file: " + path);
    json j = json::parse(in);
    std::vector<cplx> zeta;
    for (const auto& e : j) {
        const double gamma = e.at(0).get<double>();
        const double phi = e.at(1).get<double>();
        zeta.push_back(std::polar(std::sqrt(gamma), phi));
    }
    return BirkhoffState(std::move(zeta), 0.0);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(a + (b - a) * (n > 1 ? static_cast<double>(i) / (n - 1) : 0.0));
    return out;
}

void parallel_for(int jobs, int count, const std::function<void(int)>& body) {
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::future<void>> pool;
    for (int w = 0; w < std::min(jobs, count); ++w)
        pool.push_back(std::async(std::launch::async, [&] {
            for (int i = next++; i < count; i = next++) body(i);
        }));
    for (auto& f : pool) f.get();
}

json state_report(const BirkhoffState& st) {
    json gams = json::array(), oms = json::array();
    for (double g : st.gammas()) gams.push_back(g);
    for (double w : frequencies(st).omega) oms.push_back(w);
    return json{{"gaps", st.gaps()},        {"gamma", gams},
                {"omega", oms},             {"mean", st.mean()},
                {"tail_action", st.tail_action}, {"trace", trace_formula(st)},
                {"hamiltonian", hamiltonian_B(st)}};
}

// ---- command bodies -------------------------------------------------------

int cmd_forward(const Global& g, const std::string& input, double q, double eps) {
    RealField u = load_or_build_field(g, input, q, eps);
    BirkhoffState st = birkhoff_forward(u);
    const fs::path dir = fs::path(g.out) / "forward";
    write_json(dir / "state.json", to_json(st));
    write_json(dir / "report.json", state_report(st));
    write_json(dir / "manifest.json",
               manifest_base(g, "forward", {{"q", q}, {"eps", eps}, {"input", input}}));
    std::printf("forward: P=%d, gamma_1=%s\n", st.gaps(),
                st.gaps() ? fmt(st.gamma(1)).c_str() : "n/a");
    return 0;
}

int cmd_inverse(const Global& g, const std::string& gaps_file, const std::string& state_file) {
    BirkhoffState st;
    if (!gaps_file.empty())
        st = load_gaps(gaps_file);
    else if (!state_file.empty()) {
        std::ifstream in(state_file);
        if (!in) throw DomainError("cannot open state file: " + state_file);
        st = birkhoff_state_from_json(json::parse(in));
    } else
        throw DomainError("inverse: need --gaps or --state");
    RealField u = reconstruct(st, g.modes);
    const fs::path dir = fs::path(g.out) / "inverse";
    write_json(dir / "field.json", to_json(u));
    atomic_write(dir / "field.csv", field_csv(u));
    write_json(dir / "manifest.json",
               manifest_base(g, "inverse", {{"gaps", gaps_file}, {"state", state_file}}));
    std::printf("inverse: wrote field with N=%d, L2=%s\n", u.truncation(),
                fmt(sobolev_norm(u, 0.0)).c_str());
    return 0;
}

int cmd_spectrum(const Global& g, const std::string& input, double q, double eps, bool vectors) {
    RealField u = load_or_build_field(g, input, q, eps);
    LaxSpectrum spec = eigendecompose(assemble_lax(u));
    const fs::path dir = fs::path(g.out) / "spectrum";
    write_json(dir / "spectrum.json", to_json(spec));
    if (vectors) write_eigenvectors(spec, dir / "vectors");
    write_json(dir / "manifest.json",
               manifest_base(g, "spectrum", {{"q", q}, {"eps", eps}, {"input", input}}));
    std::printf("spectrum: lambda_0=%s, N_trust=%d\n", fmt(spec.lambda(0)).c_str(), spec.n_trust);
    return 0;
}

int cmd_genfun(const Global& g, const std::string& input, double q, double eps, double re0,
               double re1, int count, double im) {
    RealField u = load_or_build_field(g, input, q, eps);
    LaxSpectrum spec = eigendecompose(assemble_lax(u));
    std::ostringstream csv;
    csv << "re,im,resolvent_re,resolvent_im,product_re,product_im,rel_diff\n";
    double worst = 0.0;
    for (double re : linspace(re0, re1, count)) {
        const cplx lam(re, im);
        const cplx a = genfun_resolvent(u, lam, g.tol * 1e2).value;
        const cplx b = genfun_product(spec, lam, g.tol * 1e2).value;
        const double rel = std::abs(a - b) / std::max(1e-300, std::abs(a));
        worst = std::max(worst, rel);
        csv << fmt(re) << ',' << fmt(im) << ',' << fmt(a.real()) << ',' << fmt(a.imag()) << ','
            << fmt(b.real()) << ',' << fmt(b.imag()) << ',' << fmt(rel) << '\n';
    }
    const fs::path dir = fs::path(g.out) / "genfun";
    atomic_write(dir / "genfun.csv", csv.str());
    write_json(dir / "report.json", {{"max_rel_diff", worst}, {"tolerance", g.tol}});
    write_json(dir / "manifest.json",
               manifest_base(g, "genfun",
                             {{"q", q}, {"input", input}, {"re0", re0}, {"re1", re1},
                              {"count", count}, {"im", im}}));
    std::printf("genfun: max relative difference %s\n", fmt(worst).c_str());
    return worst < g.tol ? 0 : 1;
}

int cmd_evolve(const Global& g, const std::string& input, double q, double eps,
               const std::string& method, double tmax, int nout, double dt,
               const std::string& gaps_file) {
    RealField v0 = gaps_file.empty() ? load_or_build_field(g, input, q, eps)
                                     : reconstruct(load_gaps(gaps_file), g.modes);
    FlowSpec spec;
    spec.method = method == "direct" ? FlowMethod::direct : FlowMethod::quadrature;
    spec.dt = dt;
    spec.diag_s = {-0.5, 0.5, 1.0};
    spec.diag_gaps = true;
    for (int i = 1; i <= nout; ++i) spec.t_grid.push_back(tmax * i / nout);
    Trajectory traj = evolve_potential(v0, spec);
    const fs::path dir = fs::path(g.out) / "evolve";
    atomic_write(dir / "trajectory.csv", trajectory_csv(traj, spec.diag_s));
    for (std::size_t i = 0; i < traj.fields.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "field_%04zu.json", i);
        write_json(dir / name, to_json(traj.fields[i]));
    }
    write_json(dir / "report.json",
               {{"tail_action", traj.tail_action},
                {"final_mean", traj.fields.back().mean()},
                {"final_l2", sobolev_norm(traj.fields.back(), 0.0)}});
    write_json(dir / "manifest.json",
               manifest_base(g, "evolve",
                             {{"q", q}, {"input", input}, {"gaps", gaps_file}, {"method", method},
                              {"tmax", tmax}, {"nout", nout}, {"dt", dt}}));
    std::printf("evolve: %zu outputs, tail action %s\n", traj.times.size(),
                fmt(traj.tail_action).c_str());
    return 0;
}

int cmd_compare(const Global& g, const std::string& gaps_file, double tmax, int nout, double dt,
                double s) {
    BirkhoffState st = gaps_file.empty()
                           ? BirkhoffState({cplx(std::sqrt(0.5)), cplx(std::sqrt(0.25))}, 0.0)
                           : load_gaps(gaps_file);
    RealField v0 = reconstruct(st, g.modes);
    FlowSpec qs;
    for (int i = 1; i <= nout; ++i) qs.t_grid.push_back(tmax * i / nout);
    Trajectory tq = evolve_potential(v0, qs);
    FlowSpec ds = qs;
    ds.method = FlowMethod::direct;
    ds.dt = dt;
    Trajectory td = direct_integrate(v0, ds);
    CompareReport rep = compare_trajectories(tq, td, s);
    std::ostringstream csv;
    csv << "t,distance,gap_drift_quadrature,gap_drift_direct\n";
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        csv << fmt(rep.times[i]) << ',' << fmt(rep.distance[i]) << ',' << fmt(rep.gap_drift_a[i])
            << ',' << fmt(rep.gap_drift_b[i]) << '\n';
    const fs::path dir = fs::path(g.out) / "compare";
    atomic_write(dir / "compare.csv", csv.str());
    write_json(dir / "report.json", {{"max_distance", rep.max_distance}, {"s", s}});
    write_json(dir / "manifest.json",
               manifest_base(g, "compare",
                             {{"gaps", gaps_file}, {"tmax", tmax}, {"nout", nout}, {"dt", dt},
                              {"s", s}}));
    std::printf("compare: max H^%s distance %s\n", fmt(s).c_str(), fmt(rep.max_distance).c_str());
    return 0;
}

int cmd_illposed_half(const Global& g, int k, double eps_start) {
    BuildUkOptions opt;
    if (eps_start > 0.0) opt.eps_start = eps_start;
    UkField uk = build_uk(k, opt);
    const double mu = lambda0_root(uk.params.epsilon, uk.params.q);

    RealField u0 = uk.u;
    u0.set_mode(0, 0.0);
    std::vector<double> grid;
    for (int i = 0; i <= 1000; ++i) grid.push_back(i * 1e-3);
    XiSeries xi = xi_timeseries(u0, grid);
    WindowedIntegral w = windowed_integral(xi, 0.0, 1.0, xi.state.lambda(0));

    std::ostringstream csv;
    csv << "t,re,im,abs\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv << fmt(grid[i]) << ',' << fmt(xi.xi[i].real()) << ',' << fmt(xi.xi[i].imag()) << ','
            << fmt(std::abs(xi.xi[i])) << '\n';

    const double n2 = sobolev_norm(uk.u, -0.5);
    const fs::path dir = fs::path(g.out) / "illposed-half";
    atomic_write(dir / "xi.csv", csv.str());
    write_json(dir / "report.json",
               {{"k", k},
                {"eps_k", uk.params.epsilon},
                {"q_k", uk.params.q},
                {"F_at_k", uk.f_at_k},
                {"mu_root", mu},
                {"lambda_0", xi.state.lambda(0)},
                {"norm_hminushalf_sq", n2 * n2},
                {"norm_closed_form", -2.0 * uk.params.epsilon * uk.params.epsilon *
                                         std::log(1.0 - uk.params.q * uk.params.q)},
                {"xi0", {xi.xi[0].real(), xi.xi[0].imag()}},
                {"windowed_integral", {w.integral.real(), w.integral.imag()}},
                {"windowed_predicted", {w.predicted.real(), w.predicted.imag()}},
                {"tolerances", {{"F_root", 1e-10}, {"window_floor", 0.5 * std::sqrt(2.0)}}}});
    write_json(dir / "manifest.json",
               manifest_base(g, "illposed-half", {{"k", k}, {"eps", uk.params.epsilon}}));
    std::printf("illposed-half: k=%d eps_k=%s lambda_0=%s |integral|=%s\n", k,
                fmt(uk.params.epsilon).c_str(), fmt(xi.state.lambda(0)).c_str(),
                fmt(std::abs(w.integral)).c_str());
    return 0;
}

int cmd_illposed_deep(const Global& g, double gamma, double t) {
    std::ostringstream csv, scan;
    csv << "gamma,coef_n,re,im\n";
    scan << "gamma_from,gamma_to,min_over_eta\n";
    TwoGapDivergence prev = two_gap_divergence(gamma, t, 16);
    json factors = json::array();
    for (double gm : {gamma, 2 * gamma, 4 * gamma, 8 * gamma, 16 * gamma}) {
        TwoGapDivergence d = two_gap_divergence(gm, t, 16);
        for (int n = 1; n <= 8; ++n)
            csv << fmt(gm) << ',' << n << ',' << fmt(d.field.coeff(n).real()) << ','
                << fmt(d.field.coeff(n).imag()) << '\n';
        factors.push_back({{"gamma", gm},
                           {"q1", {d.q1.real(), d.q1.imag()}},
                           {"q2", {d.q2.real(), d.q2.imag()}},
                           {"abs_q1", std::abs(d.q1)},
                           {"abs_q2", std::abs(d.q2)}});
        if (gm != gamma)
            scan << fmt(prev.state.gamma(1)) << ',' << fmt(gm) << ','
                 << fmt(renormalization_scan(prev, d)) << '\n';
        prev = d;
    }
    const fs::path dir = fs::path(g.out) / "illposed-deep";
    atomic_write(dir / "coefficients.csv", csv.str());
    atomic_write(dir / "renormalization.csv", scan.str());
    write_json(dir / "report.json", {{"factors", factors}, {"t", t}});
    write_json(dir / "manifest.json",
               manifest_base(g, "illposed-deep", {{"gamma", gamma}, {"t", t}}));
    std::printf("illposed-deep: gamma=%s..%s at t=%s\n", fmt(gamma).c_str(),
                fmt(16 * gamma).c_str(), fmt(t).c_str());
    return 0;
}

int cmd_stability(const Global& g, double q, double delta, double s, double tmax) {
    StabilityOptions opt;
    opt.seed = g.seed;
    StabilityReport rep = stability_probe(q, delta, s, tmax, opt);
    std::ostringstream csv;
    csv << "t,orbit_distance\n";
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        csv << fmt(rep.times[i]) << ',' << fmt(rep.dist[i]) << '\n';
    const fs::path dir = fs::path(g.out) / "stability";
    atomic_write(dir / "dist.csv", csv.str());
    write_json(dir / "report.json",
               {{"sup", rep.sup}, {"delta", delta}, {"ratio", rep.ratio}, {"s", s}});
    write_json(dir / "manifest.json",
               manifest_base(g, "stability",
                             {{"q", q}, {"delta", delta}, {"s", s}, {"tmax", tmax}}));
    std::printf("stability: sup inf-distance %s (ratio %s)\n", fmt(rep.sup).c_str(),
                fmt(rep.ratio).c_str());
    return 0;
}

int cmd_recurrence(const Global& g, double q, const std::string& gaps_file, double horizon,
                   double eps) {
    BirkhoffState st = gaps_file.empty() ? birkhoff_forward(one_gap_potential(q, g.modes))
                                         : load_gaps(gaps_file);
    RecurrenceReport rep = recurrence_probe(st, 0.0, horizon, eps);
    json hits = json::array();
    for (std::size_t i = 0; i < rep.return_times.size(); ++i)
        hits.push_back({{"t", rep.return_times[i]},
                        {"phase_residual", rep.phase_residuals[i]},
                        {"return_distance", rep.return_distance[i]}});
    const fs::path dir = fs::path(g.out) / "recurrence";
    write_json(dir / "report.json", {{"found", rep.found}, {"hits", hits}, {"eps", eps}});
    write_json(dir / "manifest.json",
               manifest_base(g, "recurrence",
                             {{"q", q}, {"gaps", gaps_file}, {"horizon", horizon}, {"eps", eps}}));
    std::printf("recurrence: %s (%zu hits)\n", rep.found ? "found" : "none within horizon",
                rep.return_times.size());
    return 0;
}

int cmd_normtrack(const Global& g, const std::string& input, double q, double eps,
                  std::vector<double> s_list, double tmax) {
    RealField v0 = load_or_build_field(g, input, q, eps);
    if (s_list.empty()) s_list = {-0.5, 0.0, 0.5, 1.0};
    NormTrackReport rep = normtrack(v0, s_list, tmax);
    std::ostringstream csv;
    csv << "t";
    for (double s : s_list) csv << ",H" << fmt(s);
    csv << '\n';
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        csv << fmt(rep.times[i]);
        for (std::size_t j = 0; j < s_list.size(); ++j) csv << ',' << fmt(rep.norms[j][i]);
        csv << '\n';
    }
    json sup = json::array();
    for (double v : rep.sup) sup.push_back(v);
    const fs::path dir = fs::path(g.out) / "normtrack";
    atomic_write(dir / "norms.csv", csv.str());
    write_json(dir / "report.json",
               {{"sup", sup},
                {"direct_ran", rep.direct_ran},
                {"direct_mean_drift", rep.direct_mean_drift},
                {"direct_l2_drift", rep.direct_l2_drift}});
    write_json(dir / "manifest.json",
               manifest_base(g, "normtrack", {{"q", q}, {"input", input}, {"tmax", tmax}}));
    std::printf("normtrack: %zu exponents over [0, %s]\n", s_list.size(), fmt(tmax).c_str());
    return 0;
}

int cmd_roundtrip(const Global& g, int max_gaps, int count) {
    CounterRng rng(g.seed);
    std::vector<double> act_err(count), l2_err(count);
    std::vector<BirkhoffState> states;
    for (int i = 0; i < count; ++i) {
        const int P = 1 + static_cast<int>(rng.uniform() * max_gaps);
        std::vector<cplx> zeta(P);
        for (int n = 0; n < P; ++n)
            zeta[n] =
                std::sqrt(rng.uniform(0.05, 1.5)) * std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
        states.emplace_back(std::move(zeta), 0.0);
    }
    parallel_for(g.jobs, count, [&](int i) {
        const BirkhoffState& st = states[i];
        RealField u = reconstruct(st, g.modes);
        BirkhoffState st2 = birkhoff_forward(u);
        double worst = 0.0;
        for (int n = 1; n <= st.gaps(); ++n)
            worst = std::max(worst,
                             std::abs((n <= st2.gaps() ? st2.gamma(n) : 0.0) - st.gamma(n)));
        act_err[i] = worst;
        l2_err[i] = sobolev_norm(reconstruct(st2, g.modes) - u, 0.0);
    });
    double max_act = 0.0, max_l2 = 0.0;
    for (int i = 0; i < count; ++i) {
        max_act = std::max(max_act, act_err[i]);
        max_l2 = std::max(max_l2, l2_err[i]);
    }
    const fs::path dir = fs::path(g.out) / "roundtrip";
    write_json(dir / "report.json",
               {{"count", count},
                {"max_action_error", max_act},
                {"max_l2_error", max_l2},
                {"tolerances", {{"action", 1e-6}, {"l2", 1e-6}}}});
    write_json(dir / "manifest.json",
               manifest_base(g, "roundtrip", {{"gaps", max_gaps}, {"count", count}}));
    std::printf("roundtrip: max action error %s, max L2 error %s\n", fmt(max_act).c_str(),
                fmt(max_l2).c_str());
    return (max_act < 1e-6 && max_l2 < 1e-6) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benjamin-Ono integrable structure toolkit"};
    app.require_subcommand(1);

    Global g;
    app.add_option("--modes", g.modes, "truncation order N");
    app.add_option("--tol", g.tol, "reporting tolerance");
    app.add_option("--out", g.out, "output directory");
    app.add_option("--jobs", g.jobs, "worker pool size for sweeps");
    app.add_option("--seed", g.seed, "seed for randomized fixtures");
    app.add_option("--config", g.config, "JSON config file (flags override)");

    // forward
    double q = 0.0, eps = 0.0;
    std::string input, gaps_file, state_file;
    auto* forward = app.add_subcommand("forward", "Birkhoff transform of a potential");
    auto* fq = forward->add_option("--q", q, "one-gap parameter");
    auto* fe = forward->add_option("--eps", eps, "one-gap amplitude (default q)");
    auto* fi = forward->add_option("--input", input, "field JSON");

    auto* inverse = app.add_subcommand("inverse", "reconstruct a potential from Birkhoff data");
    auto* ig = inverse->add_option("--gaps", gaps_file, "JSON list of [gamma, phi] pairs");
    auto* is = inverse->add_option("--state", state_file, "BirkhoffState JSON");

    auto* spectrum = app.add_subcommand("spectrum", "truncated Lax spectrum");
    bool vectors = false;
    auto* sq = spectrum->add_option("--q", q, "one-gap parameter");
    auto* se = spectrum->add_option("--eps", eps, "one-gap amplitude");
    auto* si = spectrum->add_option("--input", input, "field JSON");
    spectrum->add_flag("--vectors", vectors, "export eigenvectors (json+bin)");

    auto* genfun = app.add_subcommand("genfun", "generating function along a lambda line");
    double re0 = 0.5, re1 = 5.0, im = 1.0;
    int count = 20;
    auto* gq = genfun->add_option("--q", q, "one-gap parameter");
    auto* gi = genfun->add_option("--input", input, "field JSON");
    genfun->add_option("--re-min", re0, "start of Re(lambda)");
    genfun->add_option("--re-max", re1, "end of Re(lambda)");
    genfun->add_option("--count", count, "number of points");
    genfun->add_option("--im", im, "Im(lambda)");

    auto* evolve = app.add_subcommand("evolve", "time evolution");
    std::string method = "quadrature";
    double tmax = 1.0, dt = 1e-4;
    int nout = 10;
    auto* eq_ = evolve->add_option("--q", q, "one-gap parameter");
    auto* ee = evolve->add_option("--eps", eps, "one-gap amplitude");
    auto* ei = evolve->add_option("--input", input, "field JSON");
    auto* eg = evolve->add_option("--gaps", gaps_file, "JSON list of [gamma, phi]");
    auto* em = evolve->add_option("--method", method, "quadrature | direct")
                   ->check(CLI::IsMember({"quadrature", "direct"}));
    auto* et = evolve->add_option("--tmax", tmax, "final time");
    auto* en = evolve->add_option("--nout", nout, "output count");
    auto* ed = evolve->add_option("--dt", dt, "direct time step");

    auto* compare = app.add_subcommand("compare", "quadrature vs direct trajectories");
    double cmp_s = 0.0;
    auto* cg = compare->add_option("--gaps", gaps_file, "JSON list of [gamma, phi]");
    auto* ct = compare->add_option("--tmax", tmax, "final time");
    auto* cn = compare->add_option("--nout", nout, "output count");
    auto* cd = compare->add_option("--dt", dt, "direct time step");
    auto* cs = compare->add_option("--s", cmp_s, "Sobolev exponent for distances");

    auto* ihalf = app.add_subcommand("illposed-half", "deep ground state and xi series");
    int k = 1;
    double eps_start = 0.0;
    ihalf->add_option("--k", k, "depth index (lambda_0 < -k)");
    ihalf->add_option("--eps", eps_start, "largest dyadic eps candidate");

    auto* ideep = app.add_subcommand("illposed-deep", "two-gap divergence family");
    double gamma = 50.0, t_deep = 1.0;
    ideep->add_option("--gamma", gamma, "starting action (doubles 4 times)");
    ideep->add_option("--t", t_deep, "evaluation time");

    auto* stab = app.add_subcommand("stability", "traveling-wave orbit tracking");
    double delta = 1e-3, s_exp = 0.0;
    auto* stq = stab->add_option("--q", q, "wave parameter");
    stab->add_option("--delta", delta, "perturbation size");
    stab->add_option("--s", s_exp, "Sobolev exponent");
    auto* stt = stab->add_option("--tmax", tmax, "time horizon");

    auto* recur = app.add_subcommand("recurrence", "almost-period search");
    double horizon = 25.0, rec_eps = 1e-3;
    auto* rq = recur->add_option("--q", q, "one-gap parameter");
    auto* rg = recur->add_option("--gaps", gaps_file, "JSON list of [gamma, phi]");
    recur->add_option("--horizon", horizon, "search horizon");
    recur->add_option("--eps", rec_eps, "phase tolerance");

    auto* ntrack = app.add_subcommand("normtrack", "Sobolev norms along the flow");
    std::vector<double> s_list;
    auto* nq = ntrack->add_option("--q", q, "one-gap parameter");
    auto* ne = ntrack->add_option("--eps", eps, "one-gap amplitude");
    auto* ni = ntrack->add_option("--input", input, "field JSON");
    ntrack->add_option("--s", s_list, "Sobolev exponents");
    auto* nt = ntrack->add_option("--tmax", tmax, "time horizon");

    auto* rtrip = app.add_subcommand("roundtrip", "seeded forward/inverse consistency sweep");
    int rt_gaps = 3, rt_count = 25;
    rtrip->add_option("--gaps", rt_gaps, "max retained gaps per state");
    rtrip->add_option("--count", rt_count, "number of seeded states");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!g.config.empty()) {
            std::ifstream in(g.config);
            if (!in) {
                std::cerr << "cannot open config: " << g.config << "\n";
                return 2;
            }
            g.cfg = json::parse(in);
            merge(app.get_option("--modes"), g.cfg, "modes", g.modes);
            merge(app.get_option("--tol"), g.cfg, "tol", g.tol);
            merge(app.get_option("--out"), g.cfg, "out", g.out);
            merge(app.get_option("--jobs"), g.cfg, "jobs", g.jobs);
            merge(app.get_option("--seed"), g.cfg, "seed", g.seed);
            merge(fq, g.cfg, "q", q);
            merge(fe, g.cfg, "eps", eps);
            merge(fi, g.cfg, "input", input);
            merge(sq, g.cfg, "q", q); merge(se, g.cfg, "eps", eps); merge(si, g.cfg, "input", input);
            merge(gq, g.cfg, "q", q); merge(gi, g.cfg, "input", input);
            merge(eq_, g.cfg, "q", q); merge(ee, g.cfg, "eps", eps); merge(ei, g.cfg, "input", input);
            merge(eg, g.cfg, "gaps_file", gaps_file);
            merge(em, g.cfg, "method", method);
            merge(et, g.cfg, "tmax", tmax); merge(en, g.cfg, "nout", nout); merge(ed, g.cfg, "dt", dt);
            merge(cg, g.cfg, "gaps_file", gaps_file);
            merge(ct, g.cfg, "tmax", tmax); merge(cn, g.cfg, "nout", nout); merge(cd, g.cfg, "dt", dt);
            merge(cs, g.cfg, "s", cmp_s);
            merge(ig, g.cfg, "gaps_file", gaps_file);
            merge(is, g.cfg, "state_file", state_file);
            merge(stq, g.cfg, "q", q); merge(stt, g.cfg, "tmax", tmax);
            merge(rq, g.cfg, "q", q); merge(rg, g.cfg, "gaps_file", gaps_file);
            merge(nq, g.cfg, "q", q); merge(ne, g.cfg, "eps", eps); merge(ni, g.cfg, "input", input);
            merge(nt, g.cfg, "tmax", tmax);
        }

        if (forward->parsed()) return cmd_forward(g, input, q, eps);
        if (inverse->parsed()) return cmd_inverse(g, gaps_file, state_file);
        if (spectrum->parsed()) return cmd_spectrum(g, input, q, eps, vectors);
        if (genfun->parsed()) return cmd_genfun(g, input, q, eps, re0, re1, count, im);
        if (evolve->parsed()) return cmd_evolve(g, input, q, eps, method, tmax, nout, dt, gaps_file);
        if (compare->parsed()) return cmd_compare(g, gaps_file, tmax, nout, dt, cmp_s);
        if (ihalf->parsed()) return cmd_illposed_half(g, k, eps_start);
        if (ideep->parsed()) return cmd_illposed_deep(g, gamma, t_deep);
        if (stab->parsed()) return cmd_stability(g, q, delta, s_exp, tmax);
        if (recur->parsed()) return cmd_recurrence(g, q, gaps_file, horizon, rec_eps);
        if (ntrack->parsed()) return cmd_normtrack(g, input, q, eps, s_list, tmax);
        if (rtrip->parsed()) return cmd_roundtrip(g, rt_gaps, rt_count);
    } catch (const Error& e) {
        json err = {{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err = {{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 2;
}
