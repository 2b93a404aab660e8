// BS-side CSI estimation: composite zero-forcing, delay-domain separation of
// phase-shifted UEs, comb and block separation for the baseline schemes, and
// MSE reporting.
#pragma once

#include <vector>

#include "numerics.hpp"
#include "pilots.hpp"

namespace isac {

// H(k,m) = Y(k,m) / X(k,m) on the base (unshifted, unit-amplitude) pilots.
cgrid estimate_composite_cfr(const cgrid& y, const cgrid& x_base);

// Delay-domain view: per-column inverse transform scaled 1/N, so bins hold
// physical tap amplitudes. UE u occupies bins [n_u, n_u + L_u).
cgrid composite_cir(const cgrid& h_f);

// Keep one UE's delay segment, transform back, and strip the known phase
// ramp e^{-j2πk·n_u/N} so the result estimates the physical channel.
cgrid extract_ue_cfr(const cgrid& cir, int n_u, int l_u);

// Full-band separation pipeline shared by APS and PS: composite ZF, CIR,
// per-UE extraction at the plan's offsets and window lengths.
std::vector<cgrid> separate_full_band(const cgrid& y, const cgrid& x_base, const PilotPlan& plan);

// Comb separation: ZF on the UE's comb, decimated-length CIR, first L_u taps,
// comb-offset correction, zero-padding back to N. Throws errc::ambiguity when
// L_u exceeds the comb's unambiguous window N·rho_p.
std::vector<cgrid> separate_ci(const cgrid& y, const cgrid& x_base, const PilotPlan& plan);

// Block separation: ZF on the UE's own block; the estimate exists only there.
struct BlockEstimate {
  std::vector<int> subcarriers;
  cgrid values;  // |subcarriers| x M
};
std::vector<BlockEstimate> separate_cb(const cgrid& y, const cgrid& x_base, const PilotPlan& plan);

struct EstimationReport {
  std::vector<double> per_ue_mse;
  double mean_mse = 0.0;
};

// Mean |H - H_hat|^2 over each estimate's domain (the true response is
// constant across symbols), then averaged over UEs.
EstimationReport mse_report(const std::vector<cvec>& truth, const std::vector<cgrid>& estimates);
EstimationReport mse_report_blocks(const std::vector<cvec>& truth,
                                   const std::vector<BlockEstimate>& estimates);

}  // namespace isac
