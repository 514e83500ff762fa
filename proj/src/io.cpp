#include "bo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bo/errors.hpp"

namespace bo {
namespace {

json pairs_of(const std::vector<cplx>& v) {
    json arr = json::array();
    for (const auto& c : v) arr.push_back({c.real(), c.imag()});
    return arr;
}

std::vector<cplx> pairs_from(const json& arr) {
    std::vector<cplx> out;
    for (const auto& e : arr) out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return out;
}

}  // namespace

json to_json(const RealField& f) {
    return {{"N", f.truncation()}, {"coeffs", pairs_of(f.nonneg_modes())}};
}

json to_json(const HardyField& f) {
    return {{"N", f.truncation()}, {"coeffs", pairs_of(f.coeffs())}};
}

RealField real_field_from_json(const json& j) {
    auto modes = pairs_from(j.at("coeffs"));
    if (static_cast<int>(modes.size()) != j.at("N").get<int>() + 1)
        throw DomainError("real_field_from_json: N does not match coeffs length");
    return RealField::from_nonneg_modes(std::move(modes));
}

HardyField hardy_field_from_json(const json& j) {
    auto modes = pairs_from(j.at("coeffs"));
    if (static_cast<int>(modes.size()) != j.at("N").get<int>() + 1)
        throw DomainError("hardy_field_from_json: N does not match coeffs length");
    return HardyField(std::move(modes));
}

json to_json(const LaxSpectrum& spec) {
    json lam = json::array(), gam = json::array();
    for (int i = 0; i < spec.lambda.size(); ++i) lam.push_back(spec.lambda(i));
    for (double g : spec.gamma) gam.push_back(g);
    return {{"lambda", lam}, {"gamma", gam}, {"N_trust", spec.n_trust}};
}

json to_json(const BirkhoffState& s) {
    json kap = json::array(), mu = json::array(), lam = json::array();
    for (double v : s.kappas()) kap.push_back(v);
    for (double v : s.mu_ratios()) mu.push_back(v);
    for (double v : s.lambdas()) lam.push_back(v);
    return {{"c", s.mean()},
            {"zeta", pairs_of(s.zetas())},
            {"kappa", kap},
            {"mu_ratio", mu},
            {"lambda", lam}};
}

BirkhoffState birkhoff_state_from_json(const json& j) {
    BirkhoffState s(pairs_from(j.at("zeta")), j.at("c").get<double>());
    if (j.contains("kappa") && j.at("kappa").size() != s.kappas().size())
        throw DomainError("birkhoff_state_from_json: kappa length mismatch");
    if (j.contains("lambda") && j.at("lambda").size() != s.lambdas().size())
        throw DomainError("birkhoff_state_from_json: lambda length mismatch");
    return s;
}

void write_eigenvectors(const LaxSpectrum& spec, const std::filesystem::path& base) {
    json header = {{"rows", spec.vectors.rows()},
                   {"cols", spec.vectors.cols()},
                   {"layout", "column-major"},
                   {"scalar", "complex128"}};
    write_json(base.string() + ".json", header);
    std::string blob(reinterpret_cast<const char*>(spec.vectors.data()),
                     sizeof(cplx) * spec.vectors.size());
    atomic_write(base.string() + ".bin", blob);
}

Eigen::MatrixXcd read_eigenvectors(const std::filesystem::path& base) {
    std::ifstream h(base.string() + ".json");
    if (!h) throw DomainError("read_eigenvectors: missing header");
    json header = json::parse(h);
    const auto rows = header.at("rows").get<Eigen::Index>();
    const auto cols = header.at("cols").get<Eigen::Index>();
    Eigen::MatrixXcd M(rows, cols);
    std::ifstream b(base.string() + ".bin", std::ios::binary);
    if (!b) throw DomainError("read_eigenvectors: missing blob");
    b.read(reinterpret_cast<char*>(M.data()), sizeof(cplx) * M.size());
    if (!b) throw DomainError("read_eigenvectors: short read");
    return M;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("atomic_write: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("atomic_write: short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const json& j) {
    atomic_write(path, j.dump(2) + "\n");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string field_csv(const RealField& f) {
    std::ostringstream out;
    out << "n,re,im\n";
    for (int n = 0; n <= f.truncation(); ++n)
        out << n << ',' << fmt(f.coeff(n).real()) << ',' << fmt(f.coeff(n).imag()) << '\n';
    return out.str();
}

std::string trajectory_csv(const Trajectory& t, const std::vector<double>& diag_s) {
    std::ostringstream out;
    std::size_t n_gaps = 0;
    for (const auto& d : t.diagnostics) n_gaps = std::max(n_gaps, d.gaps.size());
    out << "t,mean,L2";
    for (double s : diag_s) out << ",H" << fmt(s);
    for (std::size_t g = 1; g <= n_gaps; ++g) out << ",gamma_" << g;
    out << '\n';
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        const auto& d = t.diagnostics[i];
        out << fmt(t.times[i]) << ',' << fmt(d.mean) << ',' << fmt(d.l2);
        for (double h : d.hs) out << ',' << fmt(h);
        for (std::size_t g = 0; g < n_gaps; ++g)
            out << ',' << (g < d.gaps.size() ? fmt(d.gaps[g]) : "0");
        out << '\n';
    }
    return out.str();
}

}  // namespace bo
