#include "doctest.h"
#include "numerics.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace isac;

namespace {

constexpr double kPi = 3.14159265358979323846;

// O(N^2) reference transform used as the independent oracle.
cvec direct_dft(const cvec& x, bool inverse) {
  const std::size_t n = x.size();
  const double sign = inverse ? 2.0 : -2.0;
  cvec out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      acc += x[i] * std::polar(1.0, sign * kPi * static_cast<double>(k * i) / static_cast<double>(n));
    out[k] = acc;
  }
  return out;
}

double max_abs_diff(const cvec& a, const cvec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double l2_norm(const cvec& a) {
  double s = 0.0;
  for (const cplx& v : a) s += std::norm(v);
  return std::sqrt(s);
}

cvec random_vec(std::size_t n, RandomStream& rs) {
  cvec x(n);
  for (cplx& v : x) v = rs.cnormal();
  return x;
}

cvec qpsk_vec(std::size_t n, RandomStream& rs) {
  cvec x(n);
  const double a = 1.0 / std::sqrt(2.0);
  for (cplx& v : x) {
    const std::uint64_t bits = rs.next_u64();
    v = cplx((bits & 1) ? a : -a, (bits & 2) ? a : -a);
  }
  return x;
}

}  // namespace

TEST_CASE("dft of an impulse is all ones") {
  cvec x = {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(0, 0)};
  cvec X = dft(x);
  for (const cplx& v : X) CHECK(std::abs(v - cplx(1, 0)) < 1e-12);
}

TEST_CASE("dft of a single tone lands in one bin") {
  cvec x(4);
  for (std::size_t n = 0; n < 4; ++n) x[n] = std::polar(1.0, 2.0 * kPi * static_cast<double>(n) / 4.0);
  cvec X = dft(x);
  CHECK(std::abs(X[0]) < 1e-12);
  CHECK(std::abs(X[1] - cplx(4, 0)) < 1e-12);
  CHECK(std::abs(X[2]) < 1e-12);
  CHECK(std::abs(X[3]) < 1e-12);
}

TEST_CASE("idft of all ones is a scaled impulse") {
  cvec X = {cplx(1, 0), cplx(1, 0), cplx(1, 0), cplx(1, 0)};
  cvec x = idft(X);
  CHECK(std::abs(x[0] - cplx(4, 0)) < 1e-12);
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(x[i]) < 1e-12);
}

TEST_CASE("idft(dft(x)) equals N*x and the normalized round trip recovers x") {
  RandomStream rs(7, 0, 0, 0);
  cvec x = random_vec(256, rs);
  cvec back = idft(dft(x));
  cvec scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = x[i] * 256.0;
  CHECK(max_abs_diff(back, scaled) / l2_norm(scaled) < 1e-12);
  for (cplx& v : back) v /= 256.0;
  CHECK(max_abs_diff(back, x) < 1e-12);
}

TEST_CASE("idft is linear") {
  RandomStream rs(8, 0, 0, 0);
  cvec X = random_vec(64, rs);
  cvec Y = random_vec(64, rs);
  const cplx a(1.7, -0.3), b(-0.6, 2.2);
  cvec mix(64);
  for (std::size_t i = 0; i < 64; ++i) mix[i] = a * X[i] + b * Y[i];
  cvec lhs = idft(mix);
  cvec ix = idft(X), iy = idft(Y);
  cvec rhs(64);
  for (std::size_t i = 0; i < 64; ++i) rhs[i] = a * ix[i] + b * iy[i];
  CHECK(max_abs_diff(lhs, rhs) / l2_norm(rhs) < 1e-12);
}

TEST_CASE("non-power-of-two transform lengths are rejected") {
  cvec x(12, cplx(1, 0));
  CHECK_THROWS_AS((void)dft(x), error);
  CHECK_THROWS_AS((void)idft(x), error);
}

TEST_CASE("fft matches the direct summation oracle across sizes") {
  RandomStream rs(99, 0, 0, 0);
  for (std::size_t n = 2; n <= 1024; n <<= 1) {
    cvec x = random_vec(n, rs);
    cvec fast = dft(x);
    cvec slow = direct_dft(x, false);
    CHECK(max_abs_diff(fast, slow) / l2_norm(slow) < 1e-10);
    cvec ifast = idft(x);
    cvec islow = direct_dft(x, true);
    CHECK(max_abs_diff(ifast, islow) / l2_norm(islow) < 1e-10);
  }
}

TEST_CASE("Parseval holds for the unnormalized transform") {
  RandomStream rs(123, 0, 0, 0);
  cvec x = random_vec(512, rs);
  cvec X = dft(x);
  double time_e = 0.0, freq_e = 0.0;
  for (const cplx& v : x) time_e += std::norm(v);
  for (const cplx& v : X) freq_e += std::norm(v);
  CHECK(std::abs(time_e - freq_e / 512.0) / time_e < 1e-10);
}

TEST_CASE("cyclic prefix prepends the tail and strips cleanly") {
  cvec x = {cplx(1, 0), cplx(2, 0), cplx(3, 0), cplx(4, 0)};
  cvec y = add_cp(x, 2);
  cvec expect = {cplx(3, 0), cplx(4, 0), cplx(1, 0), cplx(2, 0), cplx(3, 0), cplx(4, 0)};
  REQUIRE(y.size() == 6);
  CHECK(max_abs_diff(y, expect) == 0.0);

  CHECK(max_abs_diff(add_cp(x, 0), x) == 0.0);

  RandomStream rs(5, 0, 0, 0);
  cvec r = random_vec(256, rs);
  CHECK(max_abs_diff(remove_cp(add_cp(r, 8), 8), r) == 0.0);

  CHECK_THROWS_AS((void)add_cp(x, 4), error);
  CHECK_THROWS_AS((void)remove_cp(x, 7), error);
}

TEST_CASE("periodogram of a constant record peaks at DC") {
  cvec x(64, cplx(1, 0));
  std::vector<double> p = periodogram({x}, 4);
  CHECK(p[0] == doctest::Approx(0.0));
  for (double v : p) CHECK(v <= 0.0 + 1e-12);
}

TEST_CASE("scaled comb pilots carry the same total power as full-band pilots") {
  RandomStream rs(2024, 0, lane::pilots, 0);
  const std::size_t n = 256;
  cvec full = qpsk_vec(n, rs);
  cvec comb(n, cplx(0, 0));
  cvec comb_syms = qpsk_vec(n / 4, rs);
  for (std::size_t i = 0; i < n / 4; ++i) comb[4 * i] = 2.0 * comb_syms[i];  // sqrt(1/rho_p), rho_p = 1/4

  // Parseval over the time records produced by the normalized synthesis IDFT.
  cvec tf = idft(full), tc = idft(comb);
  double pf = 0.0, pc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pf += std::norm(tf[i] / static_cast<double>(n));
    pc += std::norm(tc[i] / static_cast<double>(n));
  }
  CHECK(std::abs(pf - pc) < 1e-9);
}

TEST_CASE("unscaled comb pilots show higher maxima outside the mainlobe than full-band pilots") {
  // Periodogram of the pilot sequence itself, i.e. the delay-power profile.
  // The comb's periodic repetition produces images at exactly the peak height,
  // while a full-band pseudo-random sequence keeps everything off-peak
  // strictly below its maximum.
  RandomStream rs(2024, 0, lane::pilots, 1);
  const std::size_t n = 256, os = 4;
  cvec full = qpsk_vec(n, rs);
  cvec comb(n, cplx(0, 0));
  cvec comb_syms = qpsk_vec(n / 4, rs);
  for (std::size_t i = 0; i < n / 4; ++i) comb[4 * i] = comb_syms[i];

  auto peak_sidelobe_db = [&](const cvec& x) {
    std::vector<double> p = periodogram({x}, os);
    const std::size_t len = p.size();
    std::size_t argmax = 0;
    for (std::size_t b = 1; b < len; ++b)
      if (p[b] > p[argmax]) argmax = b;
    double psl = -1e300;
    for (std::size_t b = 0; b < len; ++b) {
      const std::size_t fwd = (b + len - argmax) % len;
      const std::size_t dist = std::min(fwd, len - fwd);
      if (dist > os) psl = std::max(psl, p[b]);
    }
    return psl;
  };

  const double psl_full = peak_sidelobe_db(full);
  const double psl_comb = peak_sidelobe_db(comb);
  CHECK(psl_comb > psl_full);
  CHECK(psl_comb == doctest::Approx(0.0).epsilon(1e-9));  // grating images replicate the peak
  CHECK(psl_full < -0.1);
}

TEST_CASE("periodogram rejects bad inputs") {
  CHECK_THROWS_AS((void)periodogram({}, 4), error);
  cvec x(16, cplx(1, 0));
  CHECK_THROWS_AS((void)periodogram({x}, 3), error);
  CHECK_THROWS_AS((void)periodogram({x, cvec(8, cplx(1, 0))}, 2), error);
}

TEST_CASE("random streams replay exactly and split by lane") {
  RandomStream a(42, 3, lane::noise, 7);
  RandomStream b(42, 3, lane::noise, 7);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

  const std::uint64_t base = RandomStream(42, 3, lane::noise, 7).next_u64();
  CHECK(RandomStream(43, 3, lane::noise, 7).next_u64() != base);
  CHECK(RandomStream(42, 4, lane::noise, 7).next_u64() != base);
  CHECK(RandomStream(42, 3, lane::channel, 7).next_u64() != base);
  CHECK(RandomStream(42, 3, lane::noise, 8).next_u64() != base);
}

TEST_CASE("gaussian and gamma draws have the expected first moments") {
  RandomStream rs(77, 0, 0, 0);
  const int trials = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double z = rs.normal();
    sum += z;
    sumsq += z * z;
  }
  CHECK(std::abs(sum / trials) < 0.01);
  CHECK(sumsq / trials == doctest::Approx(1.0).epsilon(0.02));

  double csum = 0.0;
  for (int i = 0; i < trials; ++i) csum += std::norm(rs.cnormal());
  CHECK(csum / trials == doctest::Approx(1.0).epsilon(0.02));

  double gsum = 0.0;
  for (int i = 0; i < trials; ++i) gsum += rs.gamma(2.0, 2.0);
  CHECK(gsum / trials == doctest::Approx(4.0).epsilon(0.03));
}
