#pragma once

#include "channel.hpp"
#include "numerics.hpp"
#include "pilots.hpp"

#include <string>
#include <vector>

namespace isac {

// Normalized delay mismatch response of a pilot comb: 1 at the mainlobe and
// at every grating lobe, 0 at the first null delta_tau = rho_p/(n_p*delta_f).
double ambiguity(double delta_tau_s, double rho_p, int n_p, double delta_f);

struct ResolutionReport {
  Scheme scheme = Scheme::APS;
  int n_p = 0;  // pilot-bearing subcarriers
  double delay_resolution_s = 0.0;
  double range_resolution_m = 0.0;
  double unambiguous_delay_s = 0.0;
  double unambiguous_range_m = 0.0;
};

ResolutionReport resolution_report(const SchemeParams& scheme, const SystemParams& params);

// Expected number of admitted UEs. Full-band adaptive allocation supports
// N / E[L]; the symmetric truncated-normal and fixed tap laws are evaluated
// in closed form, other laws by a deterministic million-draw mean. The
// fixed-count schemes support exactly 1/rho UEs independent of the tap law.
double expected_ue_count(const TapCountDistribution& dist, const SystemParams& params,
                         const SchemeParams& scheme);

// Real-operation counts for one radix-2 transform of length n.
long long fft_additions(int n);
long long fft_multiplications(int n);

struct ComplexityReport {
  Scheme scheme = Scheme::APS;
  int n = 0;
  int u = 0;
  long long tx_additions = 0;  // totals across the U transmitters
  long long tx_multiplications = 0;
  long long bs_additions = 0;
  long long bs_multiplications = 0;
  long long tx_additions_per_ue = 0;  // totals divided by U, rounded up
  long long tx_multiplications_per_ue = 0;
  long long bs_additions_per_ue = 0;
  long long bs_multiplications_per_ue = 0;
};

// Operation counts per OFDM symbol. The default derives addition totals from
// the addition kernel of the transform; literal_formulas instead reuses the
// multiplication kernel with the +2N term for BS additions, reproducing the
// alternate convention some operation-count tables use. Block allocation has
// no closed-form entry and is rejected.
ComplexityReport complexity_report(Scheme scheme, int n, int u, bool literal_formulas = false);

struct SignalingReport {
  Scheme scheme = Scheme::APS;
  long long total_bits = 0;    // Q
  long long per_ue_bits = 0;   // eta = Q / U
};

// Control bits needed to convey each UE's extraction offset (full-band
// adaptive: log2 N per UE) or its slot/comb index (fixed-offset and comb
// schemes: log2 of the inverse ratio per UE).
SignalingReport signaling_report(Scheme scheme, int n, int u, int rho_inv);

struct MaskPoint {
  double freq = 0.0;  // normalized frequency, monotone increasing
  double db = 0.0;    // dB limit at that frequency
};
using Mask = std::vector<MaskPoint>;

// Parse "freq dB" lines; '#' starts a comment. Requires at least two points
// and strictly increasing frequencies.
Mask load_mask(const std::string& path);

double mask_limit_db(const Mask& mask, double freq);

struct SpectrumPoint {
  double freq = 0.0;
  double db = 0.0;
};

struct MaskReport {
  double min_margin_db = 0.0;  // most negative means deepest violation
  double worst_freq = 0.0;
  std::vector<std::size_t> violations;  // indices of spectrum points above the mask
};

// Margin = mask(f) - spectrum(f) per point; every spectrum frequency must lie
// inside the mask's coverage.
MaskReport psd_mask_check(const std::vector<SpectrumPoint>& spectrum, const Mask& mask);

}  // namespace isac
