#ifndef BO_PROBES_HPP
#define BO_PROBES_HPP

#include <vector>

#include "bo/birkhoff.hpp"
#include "bo/field.hpp"

namespace bo {

/// Distance from f to the translation orbit of g in H^s:
/// min over tau of ||f - g(.+tau)||_s, found on a uniform tau grid (8N points
/// via one FFT of the cross-correlation) and refined by a parabolic fit plus
/// Newton steps; the refined value never exceeds the grid minimum.
struct OrbitDistance {
    double distance = 0.0;
    double tau = 0.0;
};
OrbitDistance orbit_distance(const RealField& f, const RealField& g, double s);

struct StabilityOptions {
    std::uint64_t seed = 1;
    int n_times = 51;
    int truncation = 128;
    int pert_band = 16;  // perturbation modes 1..band
};

struct StabilityReport {
    std::vector<double> times;
    std::vector<double> dist;  // inf over translations at each time
    double sup = 0.0;
    double ratio = 0.0;        // sup / delta (0 when delta == 0)
    double delta = 0.0;
};

/// Perturb the traveling wave u_{0,q} by a random mean-zero field of H^s norm
/// delta, evolve both by quadrature, and track sup_t inf_tau of the H^s
/// distance to the translated orbit.
StabilityReport stability_probe(double q, double delta, double s, double t_max,
                                const StabilityOptions& opt = {});

struct RecurrenceOptions {
    int max_hits = 3;
    double grid_dt = 0.0;  // 0: auto eps/(2 max|omega|)
    int truncation = 256;
};

struct RecurrenceReport {
    bool found = false;
    std::vector<double> return_times;     // refined local minimizers of the phase spread
    std::vector<double> phase_residuals;  // max_n |e^{i omega_n t} - 1| there
    std::vector<double> return_distance;  // L2 distance of the reconstructed potential
};

/// Scan (0, horizon] for eps-almost-periods of the phase flow.
RecurrenceReport recurrence_probe(const BirkhoffState& state, double c, double horizon, double eps,
                                  const RecurrenceOptions& opt = {});

struct NormTrackOptions {
    int n_times = 101;
    double direct_dt = 1e-4;
    long max_direct_steps = 200000;  // direct integration skipped beyond this
};

struct NormTrackReport {
    std::vector<double> times;
    std::vector<std::vector<double>> norms;  // norms[j][i] = H^{s_j} at times[i] (quadrature)
    std::vector<double> sup;                 // per exponent
    bool direct_ran = false;
    double direct_mean_drift = 0.0;
    double direct_l2_drift = 0.0;
};

/// Track H^s norms along the flow; quadrature always, direct when the step
/// budget allows, reporting mean/L2 drift for the latter.
NormTrackReport normtrack(const RealField& v0, const std::vector<double>& s_list, double t_max,
                          const NormTrackOptions& opt = {});

}  // namespace bo

#endif
