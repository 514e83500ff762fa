#ifndef BO_FLOW_HPP
#define BO_FLOW_HPP

#include <vector>

#include "bo/birkhoff.hpp"
#include "bo/field.hpp"
#include "bo/finite_gap.hpp"

namespace bo {

enum class FlowMethod { quadrature, direct };

struct FlowSpec {
    std::vector<double> t_grid;          // strictly increasing output times, t >= 0
    FlowMethod method = FlowMethod::quadrature;
    double dt = 1e-4;                    // direct only
    double dealias = 2.0 / 3.0;          // direct only: retained fraction of the grid band
    std::vector<double> diag_s;          // extra Sobolev exponents to record per time
    bool diag_gaps = false;              // record the gap sequence per output time
    BirkhoffOptions birkhoff;            // quadrature path controls
};

struct FlowDiagnostics {
    double mean = 0.0;
    double l2 = 0.0;
    std::vector<double> hs;    // one per FlowSpec::diag_s
    std::vector<double> gaps;  // when diag_gaps
};

struct Trajectory {
    std::vector<double> times;
    std::vector<RealField> fields;
    std::vector<BirkhoffState> states;  // quadrature path only
    std::vector<FlowDiagnostics> diagnostics;
    double tail_action = 0.0;           // action discarded by the finite-gap truncation
};

/// Exact flow in Birkhoff coordinates: zeta_n -> zeta_n e^{i t omega_{c,n}};
/// actions and every derived quantity are copied unchanged.
BirkhoffState quadrature_evolve(const BirkhoffState& state, double t, double c = 0.0);

/// Full potential evolution.  Quadrature: split the mean c, transport the
/// mean-zero part by the exact phase flow, reconstruct, translate x by -2ct,
/// add c back -- the output solves the BO equation with initial data v0.
/// Direct: delegate to direct_integrate.
Trajectory evolve_potential(const RealField& v0, const FlowSpec& spec);

/// Integrating-factor RK4 pseudospectral integrator in coefficient space;
/// linear symbol i n|n| applied exactly, quadratic term dealiased.
Trajectory direct_integrate(const RealField& v0, const FlowSpec& spec);

struct CompareReport {
    std::vector<double> times;
    std::vector<double> distance;     // per-time H^s distance
    double max_distance = 0.0;
    std::vector<double> gap_drift_a;  // per-time max_n |gamma_n(t) - gamma_n(0)|
    std::vector<double> gap_drift_b;
};

/// Per-time H^s distance between two trajectories on identical grids, plus
/// gap drift of each (gaps recovered by the forward transform of each field).
CompareReport compare_trajectories(const Trajectory& a, const Trajectory& b, double s);

/// Conserved energy (1/2) sum |n| |u(n)|^2 - (1/3) (1/2pi) int u^3.
double bo_energy(const RealField& u);

}  // namespace bo

#endif
