#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bo/birkhoff.hpp"
#include "bo/errors.hpp"
#include "bo/field.hpp"
#include "bo/finite_gap.hpp"
#include "bo/flow.hpp"
#include "bo/rng.hpp"

using namespace bo;

namespace {
double l2_dist(const RealField& a, const RealField& b) { return sobolev_norm(a - b, 0.0); }
}

TEST_CASE("quadrature evolve basics") {
    BirkhoffState st({cplx(0.5, 0.2), cplx(0.1, -0.3)}, 0.0);
    BirkhoffState id = quadrature_evolve(st, 0.0);
    for (int n = 1; n <= 2; ++n) CHECK(id.zeta(n) == st.zeta(n));

    // |zeta| preserved exactly, actions bitwise
    BirkhoffState e = quadrature_evolve(st, 2.7, 0.4);
    for (int n = 1; n <= 2; ++n) {
        CHECK(std::abs(e.zeta(n)) == doctest::Approx(std::abs(st.zeta(n))).epsilon(1e-15));
        CHECK(e.gamma(n) == st.gamma(n));
        CHECK(e.kappa(n) == st.kappa(n));
    }
    CHECK(hamiltonian_B(e) == hamiltonian_B(st));
    CHECK(trace_formula(e) == trace_formula(st));

    // group property
    BirkhoffState two_steps = quadrature_evolve(quadrature_evolve(st, 1.3), 0.9);
    BirkhoffState one_step = quadrature_evolve(st, 2.2);
    for (int n = 1; n <= 2; ++n)
        CHECK(std::abs(two_steps.zeta(n) - one_step.zeta(n)) < 1e-14);

    // one-gap phase advances by t omega_1
    const double q = 0.5;
    BirkhoffState og = birkhoff_forward(one_gap_potential(q, 128));
    const double t = 3.7, om1 = (1.0 - 3.0 * q * q) / (1.0 - q * q);
    BirkhoffState og_t = quadrature_evolve(og, t);
    const double dphi = std::arg(og_t.zeta(1) / og.zeta(1));
    const double want = std::remainder(om1 * t, 2.0 * M_PI);
    CHECK(std::remainder(dphi - want, 2.0 * M_PI) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("constant data stays constant") {
    RealField v0(64);
    v0.set_mode(0, 1.75);
    FlowSpec spec;
    spec.t_grid = {0.5, 1.0, 2.0};
    Trajectory traj = evolve_potential(v0, spec);
    for (const auto& f : traj.fields) {
        CHECK(f.mean() == doctest::Approx(1.75).epsilon(1e-14));
        CHECK(sobolev_norm(f, 0.0) == doctest::Approx(1.75).epsilon(1e-13));
    }
}

TEST_CASE("quadrature trajectory follows the traveling wave") {
    const double q = 0.5, om1 = 1.0 / 3.0;
    RealField u0 = one_gap_potential(q, 256);
    FlowSpec spec;
    for (int i = 0; i <= 20; ++i) spec.t_grid.push_back(0.5 * i);
    Trajectory traj = evolve_potential(u0, spec);
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        CHECK(l2_dist(traj.fields[i], u0.translated(om1 * traj.times[i])) < 1e-6);
    // mean exactly preserved
    for (const auto& f : traj.fields) CHECK(f.mean() == 0.0);
}

TEST_CASE("direct integrator on zero data") {
    FlowSpec spec;
    spec.method = FlowMethod::direct;
    spec.dt = 1e-3;
    spec.t_grid = {0.1, 0.2};
    Trajectory traj = direct_integrate(RealField(32), spec);
    for (const auto& f : traj.fields) CHECK(sobolev_norm(f, 0.0) == 0.0);
}

TEST_CASE("direct integrator hits the traveling wave") {
    const double q = 0.5, om1 = 1.0 / 3.0;
    RealField u0 = one_gap_potential(q, 128);
    FlowSpec spec;
    spec.method = FlowMethod::direct;
    spec.dt = 1e-4;
    spec.t_grid = {1.0};
    Trajectory traj = direct_integrate(u0, spec);
    CHECK(l2_dist(traj.fields.back(), u0.translated(om1)) < 1e-6);

    // conservation over [0, 1]
    CHECK(traj.fields.back().mean() == 0.0);
    CHECK(std::abs(sobolev_norm(traj.fields.back(), 0.0) - sobolev_norm(u0, 0.0)) < 1e-8);
}

TEST_CASE("direct integrator conserves the cubic energy") {
    const double q = 0.5;
    RealField u0 = one_gap_potential(q, 128);
    FlowSpec spec;
    spec.method = FlowMethod::direct;
    spec.dt = 1e-4;
    spec.t_grid = {1.0};
    Trajectory traj = direct_integrate(u0, spec);
    CHECK(std::abs(bo_energy(traj.fields.back()) - bo_energy(u0)) < 1e-7);
}

TEST_CASE("direct integration is reversible") {
    // BO is invariant under (t, x) -> (-t, -x); integrate, flip x, integrate,
    // flip back, compare with the initial data
    RealField u0 = one_gap_potential(0.45, 128);
    FlowSpec spec;
    spec.method = FlowMethod::direct;
    spec.dt = 1e-4;
    spec.t_grid = {0.5};
    RealField fwd = direct_integrate(u0, spec).fields.back();
    std::vector<cplx> flipped(fwd.truncation() + 1);
    for (int n = 0; n <= fwd.truncation(); ++n) flipped[n] = fwd.coeff(-n);
    RealField back = direct_integrate(RealField::from_nonneg_modes(flipped), spec).fields.back();
    std::vector<cplx> unflipped(back.truncation() + 1);
    for (int n = 0; n <= back.truncation(); ++n) unflipped[n] = back.coeff(-n);
    CHECK(l2_dist(RealField::from_nonneg_modes(unflipped), u0) < 1e-6);
}

TEST_CASE("direct integrator guards") {
    FlowSpec spec;
    spec.method = FlowMethod::direct;
    spec.dt = 1e-3;
    spec.t_grid = {0.1};
    CHECK_THROWS_AS(direct_integrate(RealField(128), spec), StepTooLarge);  // dt N^2 = 16.4

    FlowSpec bad;
    bad.t_grid = {1.0, 0.5};
    CHECK_THROWS_AS(evolve_potential(RealField(16), bad), DomainError);
}

TEST_CASE("c-shift composition against the direct integrator") {
    // evolve_potential must return the BO solution also for nonzero mean
    const double q = 0.4, c = 0.35;
    RealField v0 = one_gap_potential(q, 128);
    v0.set_mode(0, c);

    FlowSpec qs;
    qs.t_grid = {0.25, 0.5};
    Trajectory tq = evolve_potential(v0, qs);

    FlowSpec ds;
    ds.method = FlowMethod::direct;
    ds.dt = 1e-4;
    ds.t_grid = qs.t_grid;
    Trajectory td = direct_integrate(v0, ds);

    for (std::size_t i = 0; i < tq.times.size(); ++i)
        CHECK(l2_dist(tq.fields[i], td.fields[i]) < 1e-5);

    // and the x-shift identity: S(t, v0) = S_0(t, v0 - c)(x - 2ct) + c
    RealField u0 = v0;
    u0.set_mode(0, 0.0);
    Trajectory t0 = evolve_potential(u0, qs);
    for (std::size_t i = 0; i < tq.times.size(); ++i) {
        RealField shifted = t0.fields[i].translated(-2.0 * c * tq.times[i]);
        shifted.set_mode(0, c);
        CHECK(l2_dist(tq.fields[i], shifted) < 1e-10);
    }
}

TEST_CASE("compare trajectories") {
    RealField u0 = one_gap_potential(0.5, 128);
    FlowSpec spec;
    spec.t_grid = {0.2, 0.4};
    Trajectory a = evolve_potential(u0, spec);
    CompareReport same = compare_trajectories(a, a, 0.0);
    CHECK(same.max_distance == 0.0);
    for (double d : same.gap_drift_a) CHECK(d == 0.0);

    FlowSpec other;
    other.t_grid = {0.2, 0.5};
    Trajectory b = evolve_potential(u0, other);
    CHECK_THROWS_AS(compare_trajectories(a, b, 0.0), GridMismatch);
}

TEST_CASE("quadrature vs direct on two-gap data") {
    BirkhoffState st({cplx(std::sqrt(0.5)), cplx(std::sqrt(0.25))}, 0.0);
    RealField v0 = reconstruct(st, 128);

    FlowSpec qs;
    for (int i = 1; i <= 5; ++i) qs.t_grid.push_back(0.2 * i);
    Trajectory tq = evolve_potential(v0, qs);

    FlowSpec ds;
    ds.method = FlowMethod::direct;
    ds.dt = 1e-4;
    ds.t_grid = qs.t_grid;
    Trajectory td = direct_integrate(v0, ds);

    CompareReport rep = compare_trajectories(tq, td, 0.0);
    CHECK(rep.max_distance < 1e-4);
    // isospectrality: the direct flow preserves each gap
    for (double d : rep.gap_drift_b) CHECK(d < 1e-6);
    for (double d : rep.gap_drift_a) CHECK(d == 0.0);
}
