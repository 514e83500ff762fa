#include "bo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace bo {
namespace {

// FFTW planning is not thread-safe; executing a plan on its own buffers is.
// We keep one plan pair per size and serialize both planning and execution
// on the shared buffers with a mutex.  Transforms here are small (<= 16k),
// so contention is irrelevant next to the O(N^3) eigensolves upstream.
struct PlanPair {
    fftw_plan fwd = nullptr, inv = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t n = 0;
    ~PlanPair() {
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
        if (buf) fftw_free(buf);
    }
};

std::mutex g_mutex;
std::map<std::size_t, PlanPair> g_plans;

PlanPair& plan_for(std::size_t n) {
    auto it = g_plans.find(n);
    if (it != g_plans.end()) return it->second;
    PlanPair& p = g_plans[n];
    p.n = n;
    p.buf = fftw_alloc_complex(n);
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.inv = fftw_plan_dft_1d(static_cast<int>(n), p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    return p;
}

std::vector<std::complex<double>> run(const std::vector<std::complex<double>>& in, bool forward) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanPair& p = plan_for(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        p.buf[i][0] = in[i].real();
        p.buf[i][1] = in[i].imag();
    }
    fftw_execute(forward ? p.fwd : p.inv);
    std::vector<std::complex<double>> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = {p.buf[i][0], p.buf[i][1]};
    return out;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& in) {
    return run(in, true);
}

std::vector<std::complex<double>> fft_inverse(const std::vector<std::complex<double>>& in) {
    return run(in, false);
}

std::size_t fft_good_size(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

}  // namespace bo
