#include "doctest.h"
#include "metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace isac;

namespace {

SystemParams sensing_params() {
  SystemParams p;
  p.n = 128;
  p.m = 64;
  p.delta_f = 60e3;
  p.n_cp = 32;
  return p;
}

std::string write_temp_mask(const char* name, const char* text) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("ambiguity peaks at zero offset and at grating lobes, nulls between") {
  const double rho = 0.25;
  const int n_p = 8;
  const double df = 60e3;
  CHECK(ambiguity(0.0, rho, n_p, df) == doctest::Approx(1.0));

  const double first_null = rho / (n_p * df);
  CHECK(ambiguity(first_null, rho, n_p, df) < 1e-10);

  const double grating = rho / df;
  CHECK(ambiguity(grating, rho, n_p, df) == doctest::Approx(1.0));
  CHECK(ambiguity(3.0 * grating, rho, n_p, df) == doctest::Approx(1.0));
}

TEST_CASE("ambiguity is even and periodic with the comb period") {
  const double rho = 0.5;
  const int n_p = 16;
  const double df = 60e3;
  const double period = rho / df;
  for (int i = 1; i < 40; ++i) {
    const double tau = static_cast<double>(i) * period / 40.0;
    const double v = ambiguity(tau, rho, n_p, df);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(ambiguity(-tau, rho, n_p, df) == doctest::Approx(v));
    CHECK(ambiguity(tau + period, rho, n_p, df) == doctest::Approx(v).epsilon(1e-6));
  }
  CHECK_THROWS_AS((void)ambiguity(0.0, 0.0, 8, df), error);
  CHECK_THROWS_AS((void)ambiguity(0.0, 0.5, 0, df), error);
}

TEST_CASE("resolution and unambiguous range follow the occupancy geometry") {
  SystemParams p = sensing_params();

  SchemeParams aps;
  ResolutionReport full = resolution_report(aps, p);
  CHECK(full.n_p == 128);
  CHECK(full.range_resolution_m == doctest::Approx(19.52).epsilon(2e-3));
  CHECK(full.unambiguous_range_m == doctest::Approx(2498.0).epsilon(2e-3));

  SchemeParams cb8;
  cb8.kind = Scheme::CB;
  cb8.rho_n_inv = 8;
  ResolutionReport block = resolution_report(cb8, p);
  CHECK(block.n_p == 16);
  CHECK(block.range_resolution_m == doctest::Approx(156.14).epsilon(2e-3));
  CHECK(block.unambiguous_range_m == doctest::Approx(2498.0).epsilon(2e-3));

  SchemeParams ci8;
  ci8.kind = Scheme::CI;
  ci8.rho_p_inv = 8;
  ResolutionReport comb = resolution_report(ci8, p);
  CHECK(comb.n_p == 16);
  CHECK(comb.range_resolution_m == doctest::Approx(19.52).epsilon(2e-3));
  CHECK(comb.unambiguous_range_m == doctest::Approx(312.3).epsilon(2e-3));

  SchemeParams ci4;
  ci4.kind = Scheme::CI;
  ci4.rho_p_inv = 4;
  CHECK(resolution_report(ci4, p).unambiguous_range_m == doctest::Approx(624.57).epsilon(2e-3));
}

TEST_CASE("unambiguous delay always spans the pilot count times the resolution") {
  SystemParams p = sensing_params();
  std::vector<SchemeParams> schemes(4);
  schemes[1].kind = Scheme::PS;
  schemes[2].kind = Scheme::CI;
  schemes[2].rho_p_inv = 4;
  schemes[3].kind = Scheme::CB;
  schemes[3].rho_n_inv = 8;
  for (const SchemeParams& s : schemes) {
    ResolutionReport rep = resolution_report(s, p);
    CHECK(rep.unambiguous_delay_s / rep.delay_resolution_s ==
          doctest::Approx(static_cast<double>(rep.n_p)).epsilon(1e-12));
  }
}

TEST_CASE("expected admitted UEs double the comb capacity under the default tap law") {
  SystemParams p;
  p.n = 1024;
  p.n_cp = 64;
  TapCountDistribution centered;

  SchemeParams aps;
  const double aps_count = expected_ue_count(centered, p, aps);
  CHECK(aps_count == doctest::Approx(32.0));

  SchemeParams ci;
  ci.kind = Scheme::CI;
  ci.rho_p_inv = 16;
  CHECK(aps_count / expected_ue_count(centered, p, ci) == doctest::Approx(2.0));

  SchemeParams ps;
  ps.kind = Scheme::PS;
  CHECK(expected_ue_count(centered, p, ps) == doctest::Approx(16.0));
}

TEST_CASE("frequency-flat channels admit one UE per subcarrier") {
  SystemParams p;
  p.n = 1024;
  p.n_cp = 64;
  TapCountDistribution flat;
  flat.kind = TapCountDistribution::Kind::Fixed;
  flat.fixed = 1;
  SchemeParams aps;
  CHECK(expected_ue_count(flat, p, aps) == doctest::Approx(1024.0));
}

TEST_CASE("skewed tap laws fall back to a deterministic sampled mean") {
  SystemParams p;
  p.n = 4096;
  p.n_cp = 256;
  TapCountDistribution gamma;
  gamma.kind = TapCountDistribution::Kind::Gamma;
  gamma.a = 2.0;
  gamma.b = 2.0;
  SchemeParams aps;
  const double count = expected_ue_count(gamma, p, aps);
  CHECK(count == doctest::Approx(1010.0).epsilon(0.02));
  CHECK(expected_ue_count(gamma, p, aps) == doctest::Approx(count));  // deterministic
}

TEST_CASE("transform operation counts match the radix-2 kernel at the smallest size") {
  CHECK(fft_additions(2) == 4);
  CHECK(fft_multiplications(2) == 0);
  CHECK(fft_additions(256) == 5380);
  CHECK(fft_multiplications(256) == 1284);
  CHECK_THROWS_AS((void)fft_additions(0), error);
  CHECK_THROWS_AS((void)fft_additions(96), error);
}

TEST_CASE("operation counts reproduce the full reference table") {
  struct Row {
    Scheme scheme;
    int u;
    long long tx_add, tx_add_pu, tx_mul, tx_mul_pu;
    long long bs_add, bs_add_pu, bs_mul, bs_mul_pu;
  };
  const Row rows[] = {
      {Scheme::APS, 8, 43040, 5380, 14368, 1796, 53800, 6725, 13352, 1669},
      {Scheme::APS, 16, 86080, 5380, 28736, 1796, 96840, 6053, 23624, 1477},
      {Scheme::APS, 32, 172160, 5380, 57472, 1796, 182920, 5717, 44168, 1381},
      {Scheme::PS, 4, 21520, 5380, 7184, 1796, 32280, 8070, 8216, 2054},
      {Scheme::PS, 8, 43040, 5380, 14368, 1796, 53800, 6725, 13352, 1669},
      {Scheme::PS, 16, 86080, 5380, 28736, 1796, 96840, 6053, 23624, 1477},
      {Scheme::CI, 4, 21520, 5380, 5136, 1284, 48420, 12105, 12068, 3017},
      {Scheme::CI, 8, 43040, 5380, 10272, 1284, 91460, 11433, 22340, 2793},
      {Scheme::CI, 16, 86080, 5380, 20544, 1284, 177540, 11097, 42884, 2681},
  };
  for (const Row& r : rows) {
    ComplexityReport rep = complexity_report(r.scheme, 256, r.u);
    CHECK(rep.tx_additions == r.tx_add);
    CHECK(rep.tx_additions_per_ue == r.tx_add_pu);
    CHECK(rep.tx_multiplications == r.tx_mul);
    CHECK(rep.tx_multiplications_per_ue == r.tx_mul_pu);
    CHECK(rep.bs_additions == r.bs_add);
    CHECK(rep.bs_additions_per_ue == r.bs_add_pu);
    CHECK(rep.bs_multiplications == r.bs_mul);
    CHECK(rep.bs_multiplications_per_ue == r.bs_mul_pu);
  }
}

TEST_CASE("the literal convention reuses the multiplication kernel for BS additions") {
  ComplexityReport literal = complexity_report(Scheme::APS, 256, 8, true);
  CHECK(literal.bs_additions == literal.bs_multiplications);
  CHECK(literal.bs_additions == 13352);
  ComplexityReport derived = complexity_report(Scheme::APS, 256, 8, false);
  CHECK(derived.bs_additions == 53800);
  CHECK(derived.tx_additions == literal.tx_additions);
  CHECK(derived.bs_multiplications == literal.bs_multiplications);
}

TEST_CASE("per-UE BS cost amortizes as more UEs share the composite transform") {
  long long prev_add = 0, prev_mul = 0;
  for (int u = 1; u <= 64; ++u) {
    ComplexityReport rep = complexity_report(Scheme::APS, 256, u);
    if (u > 1) {
      CHECK(rep.bs_additions_per_ue <= prev_add);
      CHECK(rep.bs_multiplications_per_ue <= prev_mul);
    }
    prev_add = rep.bs_additions_per_ue;
    prev_mul = rep.bs_multiplications_per_ue;
  }
}

TEST_CASE("comb separation needs one extra transform per UE") {
  for (int u : {1, 4, 16}) {
    ComplexityReport ci = complexity_report(Scheme::CI, 256, u);
    CHECK(ci.bs_additions == (2LL * u + 1) * fft_additions(256));
    CHECK(ci.bs_multiplications == (2LL * u + 1) * fft_multiplications(256) + 512);
  }
  CHECK_THROWS_AS((void)complexity_report(Scheme::CB, 256, 4), error);
  CHECK_THROWS_AS((void)complexity_report(Scheme::APS, 256, 0), error);
}

TEST_CASE("signaling overhead counts offset or index bits per UE") {
  SignalingReport aps = signaling_report(Scheme::APS, 256, 8, 1);
  CHECK(aps.total_bits == 64);
  CHECK(aps.per_ue_bits == 8);
  CHECK(signaling_report(Scheme::APS, 256, 16, 1).total_bits == 128);
  CHECK(signaling_report(Scheme::APS, 256, 32, 1).total_bits == 256);

  SignalingReport ps = signaling_report(Scheme::PS, 256, 4, 4);
  CHECK(ps.total_bits == 8);
  CHECK(ps.per_ue_bits == 2);
  CHECK(signaling_report(Scheme::PS, 256, 8, 8).total_bits == 24);
  CHECK(signaling_report(Scheme::PS, 256, 16, 16).total_bits == 64);

  SignalingReport ci = signaling_report(Scheme::CI, 256, 16, 16);
  CHECK(ci.total_bits == 64);
  CHECK(ci.per_ue_bits == 4);

  CHECK_THROWS_AS((void)signaling_report(Scheme::CB, 256, 4, 4), error);
  CHECK_THROWS_AS((void)signaling_report(Scheme::APS, 256, 0, 1), error);
}

TEST_CASE("mask files parse breakpoints and reject malformed input") {
  const std::string good = write_temp_mask("isac_mask_good.txt",
                                           "# demo mask\n"
                                           "0.0 0.0\n"
                                           "0.5 -20.0  # shoulder\n"
                                           "\n"
                                           "1.0 -20.0\n");
  Mask mask = load_mask(good);
  REQUIRE(mask.size() == 3);
  CHECK(mask_limit_db(mask, 0.0) == doctest::Approx(0.0));
  CHECK(mask_limit_db(mask, 0.25) == doctest::Approx(-10.0));
  CHECK(mask_limit_db(mask, 0.75) == doctest::Approx(-20.0));
  CHECK(mask_limit_db(mask, 1.0) == doctest::Approx(-20.0));
  CHECK_THROWS_AS((void)mask_limit_db(mask, 1.5), error);

  CHECK_THROWS_AS((void)load_mask("/tmp/isac_mask_missing.txt"), error);
  const std::string unordered =
      write_temp_mask("isac_mask_unordered.txt", "0.0 0.0\n0.5 -10\n0.5 -20\n");
  CHECK_THROWS_AS((void)load_mask(unordered), error);
  const std::string short_file = write_temp_mask("isac_mask_short.txt", "0.0 0.0\n");
  CHECK_THROWS_AS((void)load_mask(short_file), error);
  const std::string half_line = write_temp_mask("isac_mask_half.txt", "0.0 0.0\n0.5\n1 -20\n");
  CHECK_THROWS_AS((void)load_mask(half_line), error);
  const std::string extra = write_temp_mask("isac_mask_extra.txt", "0.0 0.0 7\n1 -20\n");
  CHECK_THROWS_AS((void)load_mask(extra), error);
}

TEST_CASE("mask margins flag every bin above the limit") {
  Mask mask = {{0.0, 0.0}, {1.0, -10.0}};
  std::vector<SpectrumPoint> below = {{0.0, -10.0}, {0.5, -15.0}, {1.0, -20.0}};
  MaskReport rep = psd_mask_check(below, mask);
  CHECK(rep.min_margin_db == doctest::Approx(10.0));
  CHECK(rep.violations.empty());

  std::vector<SpectrumPoint> touching = {{0.0, 0.0}, {1.0, -30.0}};
  rep = psd_mask_check(touching, mask);
  CHECK(rep.min_margin_db == doctest::Approx(0.0));
  CHECK(rep.violations.empty());
  CHECK(rep.worst_freq == doctest::Approx(0.0));

  std::vector<SpectrumPoint> breach = {{0.0, -5.0}, {0.5, -1.0}, {1.0, -30.0}};
  rep = psd_mask_check(breach, mask);
  CHECK(rep.min_margin_db == doctest::Approx(-4.0));
  CHECK(rep.worst_freq == doctest::Approx(0.5));
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0] == 1);

  CHECK_THROWS_AS((void)psd_mask_check({}, mask), error);
  std::vector<SpectrumPoint> outside = {{2.0, -5.0}};
  CHECK_THROWS_AS((void)psd_mask_check(outside, mask), error);
}
