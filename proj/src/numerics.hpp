// Complex vector/grid primitives shared by every layer: radix-2 transforms,
// cyclic-prefix handling, counter-seeded random streams, and periodogram
// estimation.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace isac {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Error carrying a stable code so the C boundary can map it without string
// matching. Codes mirror isac_status_t in include/isac_lab.h.
struct error : std::runtime_error {
  int code;
  error(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

namespace errc {
constexpr int invalid_argument = 1;
constexpr int validation = 2;
constexpr int io = 3;
constexpr int ambiguity = 4;
constexpr int internal = 5;
}  // namespace errc

// Column-major complex matrix: rows index subcarriers/delay bins (k), columns
// index OFDM symbols (m). Columns are contiguous so per-symbol transforms
// operate on dense spans.
struct cgrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  cvec a;

  cgrid() = default;
  cgrid(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  cplx& at(std::size_t k, std::size_t m) { return a[m * rows + k]; }
  const cplx& at(std::size_t k, std::size_t m) const { return a[m * rows + k]; }
  cplx* col(std::size_t m) { return a.data() + m * rows; }
  const cplx* col(std::size_t m) const { return a.data() + m * rows; }
};

bool is_pow2(std::size_t n);

// Unnormalized transforms. dft: X[k] = sum_n x[n] e^{-j2πkn/N}; idft uses the
// conjugate exponent and is also unnormalized (idft(dft(x)) = N·x). Scaling
// conventions differ between call sites, so each caller applies its own.
void fft_inplace(cplx* x, std::size_t n, bool inverse);
cvec dft(const cvec& x);
cvec idft(const cvec& x);

cvec add_cp(const cvec& x, std::size_t n_cp);
cvec remove_cp(const cvec& y, std::size_t n_cp);

// Per-column averaged periodogram of one or more equal-length time records.
// Records are zero-padded to oversample * next_pow2(length); the result is in
// dB, shifted so the maximum is 0 dB. Bin b corresponds to frequency
// b / padded_len in cycles per input sample (wrapping at the Nyquist rate).
std::vector<double> periodogram(const std::vector<cvec>& records, std::size_t oversample);
// Same averaging without the dB/peak normalization, for callers that compare
// several spectra against a common reference level.
std::vector<double> periodogram_linear(const std::vector<cvec>& records, std::size_t oversample);

// Purpose tags keep independent random quantities on independent lanes even
// when they share a trial index.
namespace lane {
constexpr std::uint64_t pilots = 1;
constexpr std::uint64_t taps = 2;
constexpr std::uint64_t channel = 3;
constexpr std::uint64_t noise = 4;
constexpr std::uint64_t scene = 5;
}  // namespace lane

// Deterministic stream: (master seed, trial, purpose, ue) is hashed through
// SplitMix64 into xoshiro256++ state. Identical coordinates give identical
// sequences on every platform; distinct coordinates give independent lanes.
// Gaussian draws use Box-Muller on top of 53-bit uniforms rather than
// std::normal_distribution, whose output is not bit-stable across standard
// library implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t purpose,
               std::uint64_t ue);

  std::uint64_t next_u64();
  double uniform();         // [0, 1)
  double uniform_pos();     // (0, 1], safe under log()
  double normal();          // N(0, 1)
  cplx cnormal();           // CN(0, 1): E|z|^2 = 1
  double gamma(double alpha, double theta);

 private:
  std::uint64_t s_[4];
};

}  // namespace isac
