#include "numerics.hpp"

#include <algorithm>
#include <cmath>

namespace isac {

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void bit_reverse_permute(cplx* x, std::size_t n) {
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
}

}  // namespace

void fft_inplace(cplx* x, std::size_t n, bool inverse) {
  if (!is_pow2(n)) throw error(errc::invalid_argument, "transform length must be a power of two");
  bit_reverse_permute(x, n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx u = x[i + k];
        cplx v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

cvec dft(const cvec& x) {
  cvec out = x;
  fft_inplace(out.data(), out.size(), false);
  return out;
}

cvec idft(const cvec& x) {
  cvec out = x;
  fft_inplace(out.data(), out.size(), true);
  return out;
}

cvec add_cp(const cvec& x, std::size_t n_cp) {
  if (n_cp >= x.size()) throw error(errc::invalid_argument, "cyclic prefix must be shorter than the symbol");
  cvec out;
  out.reserve(x.size() + n_cp);
  out.insert(out.end(), x.end() - static_cast<std::ptrdiff_t>(n_cp), x.end());
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

cvec remove_cp(const cvec& y, std::size_t n_cp) {
  if (n_cp >= y.size()) throw error(errc::invalid_argument, "cyclic prefix must be shorter than the record");
  return cvec(y.begin() + static_cast<std::ptrdiff_t>(n_cp), y.end());
}

std::vector<double> periodogram_linear(const std::vector<cvec>& records, std::size_t oversample) {
  if (records.empty() || records.front().empty())
    throw error(errc::invalid_argument, "periodogram needs at least one nonempty record");
  if (oversample == 0 || !is_pow2(oversample))
    throw error(errc::invalid_argument, "oversample factor must be a power of two >= 1");
  const std::size_t len = records.front().size();
  const std::size_t padded = next_pow2(len) * oversample;
  std::vector<double> acc(padded, 0.0);
  cvec buf(padded);
  for (const cvec& rec : records) {
    if (rec.size() != len)
      throw error(errc::invalid_argument, "periodogram records must share one length");
    std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
    std::copy(rec.begin(), rec.end(), buf.begin());
    fft_inplace(buf.data(), padded, false);
    for (std::size_t b = 0; b < padded; ++b) acc[b] += std::norm(buf[b]);
  }
  const double inv = 1.0 / static_cast<double>(records.size());
  for (double& v : acc) v *= inv;
  return acc;
}

std::vector<double> periodogram(const std::vector<cvec>& records, std::size_t oversample) {
  std::vector<double> p = periodogram_linear(records, oversample);
  const double peak = *std::max_element(p.begin(), p.end());
  if (peak <= 0.0) throw error(errc::invalid_argument, "periodogram of an all-zero record");
  for (double& v : p) v = 10.0 * std::log10(std::max(v / peak, 1e-300));
  return p;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t purpose,
                           std::uint64_t ue) {
  std::uint64_t h = master_seed;
  h = splitmix64(h) ^ (trial * 0xA24BAED4963EE407ULL);
  h = splitmix64(h) ^ (purpose * 0x9FB21C651E98DF25ULL);
  h = splitmix64(h) ^ (ue * 0xD6E8FEB86659FD93ULL);
  for (int i = 0; i < 4; ++i) s_[i] = splitmix64(h);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_pos() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomStream::normal() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

cplx RandomStream::cnormal() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));
  return cplx(r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2));
}

double RandomStream::gamma(double alpha, double theta) {
  if (alpha <= 0.0 || theta <= 0.0)
    throw error(errc::invalid_argument, "gamma parameters must be positive");
  // Marsaglia-Tsang squeeze for alpha >= 1; the alpha < 1 case boosts through
  // gamma(alpha + 1) * U^{1/alpha}.
  if (alpha < 1.0) {
    const double u = uniform_pos();
    return gamma(alpha + 1.0, theta) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * theta;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * theta;
  }
}

}  // namespace isac
