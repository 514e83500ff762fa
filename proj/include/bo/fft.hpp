#ifndef BO_FFT_HPP
#define BO_FFT_HPP

#include <complex>
#include <vector>

namespace bo {

/// Unnormalized forward DFT, in place semantics on a copy:
/// out[k] = sum_j in[j] e^{-2pi i jk/n}.  n must be a power of two.
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& in);

/// Unnormalized inverse DFT: out[j] = sum_k in[k] e^{+2pi i jk/n} (no 1/n).
std::vector<std::complex<double>> fft_inverse(const std::vector<std::complex<double>>& in);

/// Smallest power of two >= n.
std::size_t fft_good_size(std::size_t n);

}  // namespace bo

#endif
