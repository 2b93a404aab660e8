// Pilot scheme definitions: OFDM numerology, UE admission per scheme,
// time-offset assignment, subcarrier allocation, phase-shift mapping, and
// pilot power scaling.
#pragma once

#include <string>
#include <vector>

#include "numerics.hpp"

namespace isac {

enum class Scheme { APS, PS, CI, CB };

enum class PowerMode { PC, NonPC };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Shared OFDM numerology. Sampling rate and durations are derived so they can
// never drift out of sync with N and delta_f.
struct SystemParams {
  int n = 256;             // subcarriers
  int m = 64;              // OFDM symbols per frame
  double delta_f = 60e3;   // subcarrier spacing, Hz
  int n_cp = 64;           // cyclic prefix, samples
  double f_c = 24e9;       // carrier, Hz
  double c = 299792458.0;  // propagation speed, m/s

  double f_s() const { return static_cast<double>(n) * delta_f; }
  double t_sym() const { return 1.0 / delta_f; }
  double t_cp() const { return static_cast<double>(n_cp) / f_s(); }

  void validate() const;  // throws errc::validation with a field diagnostic
};

// Ratios are stored as inverse integers (rho = 1/value) because every scheme
// in scope uses reciprocal-of-integer ratios and exactness matters for
// admission counts and comb layouts.
struct SchemeParams {
  Scheme kind = Scheme::APS;
  int rho_p_inv = 1;   // CI comb decimation; 1 for full-band schemes
  int rho_cp_inv = 0;  // PS UE count; 0 derives N / N_cp
  int rho_n_inv = 1;   // CB block decimation
  PowerMode power = PowerMode::PC;

  void validate(const SystemParams& params) const;
  int ps_count(const SystemParams& params) const;  // 1/rho_cp after derivation
};

struct AdmissionResult {
  int supported = 0;            // U^i
  std::vector<int> admitted;    // tap counts of admitted UEs, in offer order
  int rejected = 0;             // offered but not admitted
  bool shortfall = false;       // fixed-count scheme offered fewer candidates than capacity
};

struct UePlan {
  std::vector<int> subcarriers;  // occupied rows of the N-row grid
  int n_u = 0;                   // time-domain offset, samples
  int l_u = 0;                   // tap count budgeted for this UE
  double amplitude = 1.0;        // per-subcarrier pilot amplitude
};

struct PilotPlan {
  Scheme kind = Scheme::APS;
  std::vector<UePlan> ue;
};

// N x M grid of unit-modulus QPSK pilot symbols, deterministic for a stream.
cgrid generate_pilot_grid(const SystemParams& params, RandomStream& stream);

// APS admits the longest prefix with cumulative taps <= N; fixed-count
// schemes admit exactly their capacity and flag a shortfall when offered less.
AdmissionResult admit_ues(const SchemeParams& scheme, const SystemParams& params,
                          const std::vector<int>& tap_counts);

// Exclusive prefix sums of the admitted tap counts: n_u = sum_{i<u} L_i.
std::vector<int> compute_offsets(const std::vector<int>& admitted_taps);

// X(k,m) -> e^{-j2πk·n_u/N} X(k,m). The optional symbol-indexed variant
// multiplies the exponent by the symbol index m; it exists for comparison
// runs only and smears per-symbol time offsets when enabled.
cgrid apply_phase_shift(const cgrid& grid, int n_u, bool symbol_indexed = false);

// Occupied subcarriers of UE u: comb for CI, contiguous block for CB, the
// full band otherwise.
std::vector<int> allocate_subcarriers(const SchemeParams& scheme, const SystemParams& params,
                                      int ue_index);

// Smallest CP covering both the channel spread and the round trip to R_max.
int cp_length_requirement(int l_max, double r_max_m, const SystemParams& params);

// Pilot amplitude on occupied subcarriers: 1 under PC; sqrt of the inverse
// occupied fraction under NonPC so total transmit power matches full-band.
double power_scaling(const SchemeParams& scheme);

// Full per-UE plan: allocation, offsets, amplitudes for one admitted set.
PilotPlan build_plan(const SchemeParams& scheme, const SystemParams& params,
                     const AdmissionResult& admission);

// The grid one UE actually transmits: base pilots on its subcarriers scaled
// by its amplitude, zero elsewhere, with its phase shift applied.
cgrid transmitted_grid(const cgrid& x_base, const UePlan& ue, bool symbol_indexed = false);

}  // namespace isac
