// Channel and scene realization: tap-count statistics, Rayleigh multipath
// uplink channels, point-target radar responses, and noisy grid composition.
#pragma once

#include <vector>

#include "numerics.hpp"
#include "pilots.hpp"

namespace isac {

struct TapCountDistribution {
  enum class Kind { TruncatedNormal, Gamma, MirroredGamma, Fixed };
  Kind kind = Kind::TruncatedNormal;
  // TruncatedNormal: a = mu, b = sigma. Gamma/MirroredGamma: a = shape,
  // b = scale. Values <= 0 for TruncatedNormal select the defaults
  // mu = n_cp/2 and sigma = n_cp/2.
  double a = 0.0;
  double b = 0.0;
  int fixed = 1;
};

// Integer draw in [1, n_cp-1]: round to the nearest integer, then reject
// draws that leave the support. MirroredGamma reflects a [0, n_cp]-truncated
// gamma draw about n_cp before rounding, to model long delay spreads.
int sample_tap_count(const TapCountDistribution& dist, int n_cp, RandomStream& stream);

// Sample-spaced multipath channel: gains[l] sits at delay l/f_s, each CN(0,1).
struct CommChannel {
  cvec gains;
  int tap_count() const { return static_cast<int>(gains.size()); }
};

CommChannel realize_comm_channel(int tap_count, RandomStream& stream);

// H_F(k) = sum_l beta_l e^{-j2πkl/N}, length-N frequency response.
cvec comm_cfr(const CommChannel& ch, const SystemParams& params);

struct RadarTarget {
  double range_m = 0.0;
  double velocity_mps = 0.0;
  cplx alpha = cplx(1.0, 0.0);

  double delay_s(const SystemParams& p) const { return 2.0 * range_m / p.c; }
  double doppler_hz(const SystemParams& p) const { return 2.0 * velocity_mps * p.f_c / p.c; }
};

struct RadarScene {
  std::vector<RadarTarget> targets;
  void validate(const SystemParams& params) const;
};

// G_F(k,m) = sum_p alpha_p e^{-j2πkΔf·τ_p} e^{+j2πmT·ν_p}, N x M.
cgrid radar_cfr(const RadarScene& scene, const SystemParams& params);

// Uplink superposition Y(k,m) = sum_u H_u(k)·X_u(k,m) + W, W ~ CN(0, sigma2).
// Each transmitted grid must already carry its scheme's zeros, phase shift,
// and amplitude.
cgrid apply_uplink(const std::vector<cgrid>& transmitted, const std::vector<cvec>& cfr,
                   double sigma2, RandomStream& noise);

// Monostatic echo of a UE's own grid: Y(k,m) = G(k,m)·X(k,m) + W.
cgrid radar_echo(const cgrid& transmitted, const RadarScene& scene, const SystemParams& params,
                 double sigma2, RandomStream& noise);

// snr_db = 10·log10(1/sigma2) against the unit-power pilot reference.
double sigma2_from_snr_db(double snr_db);

}  // namespace isac
