#ifndef BO_IO_HPP
#define BO_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bo/birkhoff.hpp"
#include "bo/field.hpp"
#include "bo/flow.hpp"
#include "bo/lax.hpp"

namespace bo {

using json = nlohmann::json;

// Field JSON: { "N": int, "coeffs": [[re, im], ...] }, modes 0..N only.
json to_json(const RealField& f);
json to_json(const HardyField& f);
RealField real_field_from_json(const json& j);
HardyField hardy_field_from_json(const json& j);

// Spectrum JSON: { "lambda": [...], "gamma": [...], "N_trust": int }.
json to_json(const LaxSpectrum& spec);

// BirkhoffState JSON: { "c", "zeta", "kappa", "mu_ratio", "lambda" }.
// zeta and c are authoritative on load; the derived arrays are validated.
json to_json(const BirkhoffState& s);
BirkhoffState birkhoff_state_from_json(const json& j);

/// Eigenvector matrix export: <base>.json header (shape, layout, scalar) and
/// <base>.bin with raw column-major complex<double> entries.
void write_eigenvectors(const LaxSpectrum& spec, const std::filesystem::path& base);
Eigen::MatrixXcd read_eigenvectors(const std::filesystem::path& base);

/// Atomic file write: temp file in the same directory, then rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);
void write_json(const std::filesystem::path& path, const json& j);

std::string field_csv(const RealField& f);          // n, re, im
std::string trajectory_csv(const Trajectory& t, const std::vector<double>& diag_s);

/// Deterministic double formatting for CSV (%.17g).
std::string fmt(double v);

}  // namespace bo

#endif
