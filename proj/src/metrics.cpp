#include "metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

namespace isac {

namespace {

constexpr double kPi = 3.14159265358979323846;

int log2_exact(int n, const char* what) {
  if (n < 2 || !is_pow2(static_cast<std::size_t>(n)))
    throw error(errc::invalid_argument, std::string(what) + " must be a power of two, at least 2");
  return std::countr_zero(static_cast<unsigned>(n));
}

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

double ambiguity(double delta_tau_s, double rho_p, int n_p, double delta_f) {
  if (n_p < 1) throw error(errc::invalid_argument, "ambiguity: pilot count must be at least 1");
  if (!(rho_p > 0.0) || rho_p > 1.0)
    throw error(errc::invalid_argument, "ambiguity: rho_p must lie in (0, 1]");
  const double x = kPi * delta_f * delta_tau_s / rho_p;
  const double den = std::sin(x);
  // At den -> 0 the ratio tends to |cos(n_p x)/cos(x)| = 1: mainlobe and
  // grating lobes alike.
  if (std::abs(den) < 1e-10) return 1.0;
  const double value = std::abs(std::sin(static_cast<double>(n_p) * x) /
                                (static_cast<double>(n_p) * den));
  return std::min(value, 1.0);
}

ResolutionReport resolution_report(const SchemeParams& scheme, const SystemParams& params) {
  scheme.validate(params);
  ResolutionReport rep;
  rep.scheme = scheme.kind;
  double rho_p = 1.0;
  switch (scheme.kind) {
    case Scheme::APS:
    case Scheme::PS:
      rep.n_p = params.n;
      break;
    case Scheme::CI:
      rho_p = 1.0 / static_cast<double>(scheme.rho_p_inv);
      rep.n_p = params.n / scheme.rho_p_inv;
      break;
    case Scheme::CB:
      rep.n_p = params.n / scheme.rho_n_inv;
      break;
  }
  rep.delay_resolution_s = rho_p / (static_cast<double>(rep.n_p) * params.delta_f);
  rep.range_resolution_m = 0.5 * params.c * rep.delay_resolution_s;
  rep.unambiguous_delay_s = static_cast<double>(rep.n_p) * rep.delay_resolution_s;
  rep.unambiguous_range_m = 0.5 * params.c * rep.unambiguous_delay_s;
  return rep;
}

double expected_ue_count(const TapCountDistribution& dist, const SystemParams& params,
                         const SchemeParams& scheme) {
  params.validate();
  switch (scheme.kind) {
    case Scheme::PS: return static_cast<double>(scheme.ps_count(params));
    case Scheme::CI: return static_cast<double>(scheme.rho_p_inv);
    case Scheme::CB: return static_cast<double>(scheme.rho_n_inv);
    case Scheme::APS: break;
  }
  double mean_taps = 0.0;
  if (dist.kind == TapCountDistribution::Kind::Fixed) {
    mean_taps = static_cast<double>(dist.fixed);
  } else if (dist.kind == TapCountDistribution::Kind::TruncatedNormal &&
             (dist.a <= 0.0 || dist.a == static_cast<double>(params.n_cp) / 2.0)) {
    // Centered mean with a symmetric support: rounding and rejection keep
    // the symmetry, so the mean is the center exactly.
    mean_taps = static_cast<double>(params.n_cp) / 2.0;
  } else {
    const int draws = 1000000;
    RandomStream stream(0x5EEDCAFEu, 0, lane::taps, 0);
    long long acc = 0;
    for (int i = 0; i < draws; ++i) acc += sample_tap_count(dist, params.n_cp, stream);
    mean_taps = static_cast<double>(acc) / static_cast<double>(draws);
  }
  return static_cast<double>(params.n) / mean_taps;
}

long long fft_additions(int n) {
  const long long nn = n;
  return 3 * nn * log2_exact(n, "transform length") - 3 * nn + 4;
}

long long fft_multiplications(int n) {
  const long long nn = n;
  return nn * log2_exact(n, "transform length") - 3 * nn + 4;
}

ComplexityReport complexity_report(Scheme scheme, int n, int u, bool literal_formulas) {
  if (scheme == Scheme::CB)
    throw error(errc::invalid_argument,
                "complexity: block allocation has no closed-form operation counts");
  if (u < 1) throw error(errc::invalid_argument, "complexity: UE count must be at least 1");
  const long long fa = fft_additions(n);
  const long long fm = fft_multiplications(n);
  const long long uu = u;
  const long long nn = n;

  ComplexityReport rep;
  rep.scheme = scheme;
  rep.n = n;
  rep.u = u;
  rep.tx_additions = uu * fa;
  // Full-band schemes pay 2N extra real multiplications per symbol for the
  // phase-shift mapping; the comb scheme transmits unshifted pilots.
  rep.tx_multiplications = scheme == Scheme::CI ? uu * fm : uu * (fm + 2 * nn);
  const long long kernel = scheme == Scheme::CI ? 2 * uu + 1 : uu + 2;
  rep.bs_additions = literal_formulas ? kernel * fm + 2 * nn : kernel * fa;
  rep.bs_multiplications = kernel * fm + 2 * nn;

  rep.tx_additions_per_ue = ceil_div(rep.tx_additions, uu);
  rep.tx_multiplications_per_ue = ceil_div(rep.tx_multiplications, uu);
  rep.bs_additions_per_ue = ceil_div(rep.bs_additions, uu);
  rep.bs_multiplications_per_ue = ceil_div(rep.bs_multiplications, uu);
  return rep;
}

SignalingReport signaling_report(Scheme scheme, int n, int u, int rho_inv) {
  if (u < 1) throw error(errc::invalid_argument, "signaling: UE count must be at least 1");
  SignalingReport rep;
  rep.scheme = scheme;
  long long bits_per_ue = 0;
  switch (scheme) {
    case Scheme::APS:
      bits_per_ue = log2_exact(n, "subcarrier count");
      break;
    case Scheme::PS:
    case Scheme::CI:
      bits_per_ue = log2_exact(rho_inv, "inverse ratio");
      break;
    case Scheme::CB:
      throw error(errc::invalid_argument, "signaling: block allocation has no overhead entry");
  }
  rep.total_bits = static_cast<long long>(u) * bits_per_ue;
  rep.per_ue_bits = bits_per_ue;
  return rep;
}

Mask load_mask(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io, "mask file: cannot open " + path);
  Mask mask;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double freq = 0.0, db = 0.0;
    if (!(ss >> freq)) continue;  // blank or comment-only line
    if (!(ss >> db))
      throw error(errc::validation,
                  "mask file: line " + std::to_string(line_no) + " needs a frequency and a dB limit");
    std::string rest;
    if (ss >> rest)
      throw error(errc::validation,
                  "mask file: line " + std::to_string(line_no) + " has trailing content");
    if (!mask.empty() && freq <= mask.back().freq)
      throw error(errc::validation, "mask file: line " + std::to_string(line_no) +
                                        " breaks the strictly increasing frequency order");
    mask.push_back({freq, db});
  }
  if (mask.size() < 2) throw error(errc::validation, "mask file: need at least two points");
  return mask;
}

double mask_limit_db(const Mask& mask, double freq) {
  if (mask.size() < 2) throw error(errc::validation, "mask: need at least two points");
  if (freq < mask.front().freq || freq > mask.back().freq)
    throw error(errc::validation, "mask: frequency outside the mask's coverage");
  const auto upper = std::upper_bound(
      mask.begin(), mask.end(), freq,
      [](double f, const MaskPoint& p) { return f < p.freq; });
  if (upper == mask.begin()) return mask.front().db;
  if (upper == mask.end()) return mask.back().db;
  const MaskPoint& lo = *(upper - 1);
  const MaskPoint& hi = *upper;
  const double t = (freq - lo.freq) / (hi.freq - lo.freq);
  return lo.db + t * (hi.db - lo.db);
}

MaskReport psd_mask_check(const std::vector<SpectrumPoint>& spectrum, const Mask& mask) {
  if (spectrum.empty()) throw error(errc::invalid_argument, "mask check: empty spectrum");
  MaskReport rep;
  bool first = true;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double margin = mask_limit_db(mask, spectrum[i].freq) - spectrum[i].db;
    if (first || margin < rep.min_margin_db) {
      rep.min_margin_db = margin;
      rep.worst_freq = spectrum[i].freq;
      first = false;
    }
    if (margin < 0.0) rep.violations.push_back(i);
  }
  return rep;
}

}  // namespace isac
