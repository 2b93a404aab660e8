#pragma once

#include "numerics.hpp"
#include "pilots.hpp"
#include "channel.hpp"

#include <cstddef>
#include <vector>

namespace isac {

// Delay-Doppler power map. Rows are delay bins d in [0, nd); columns are
// Doppler bins stored recentered, column j meaning signed index
// ell = j - md/2 in [-md/2, md/2).
struct DelayDopplerMap {
  std::size_t nd = 0;
  std::size_t md = 0;
  int os_delay = 1;
  int os_doppler = 1;
  std::size_t n = 0;  // underlying subcarrier count
  std::size_t m = 0;  // underlying symbol count
  std::vector<double> psi;

  double at(std::size_t d, std::size_t j) const { return psi[d * md + j]; }
  long ell_of(std::size_t j) const { return static_cast<long>(j) - static_cast<long>(md / 2); }
  std::size_t col_of_ell(long ell) const {
    return static_cast<std::size_t>(ell + static_cast<long>(md / 2));
  }
};

struct PeakBin {
  std::size_t d = 0;
  std::size_t j = 0;
  double power = 0.0;
};

struct DetectionMode {
  enum class Kind { TopP, FixedThreshold };
  Kind kind = Kind::TopP;
  int p = 1;
  double fraction = 0.5;

  static DetectionMode top(int p);
  static DetectionMode threshold(double fraction);
};

struct Detection {
  std::vector<PeakBin> peaks;
  bool shortfall = false;
};

struct TargetEstimate {
  double range_m = 0.0;
  double velocity_mps = 0.0;
  double power = 0.0;
  std::size_t delay_bin = 0;
  long doppler_bin = 0;
};

struct RangeMseReport {
  double mse = 0.0;  // mean squared range error over matched pairs
  int matched = 0;
  int missed = 0;  // estimates farther than the miss radius from any target
};

// Element-wise division of the echo by the UE's own transmitted symbols on
// its occupied subcarriers; all other rows are zero-filled so every scheme
// shares one full-size transform path.
cgrid zf_radar_response(const cgrid& y, const cgrid& tx, const std::vector<int>& occupied);

// 2-D periodogram of the radar response: inverse transform over subcarriers
// (delay axis), forward transform over symbols (Doppler axis), each
// zero-padded by its oversampling factor, power normalized by 1/(NM).
DelayDopplerMap delay_doppler_map(const cgrid& g, int os_delay = 1, int os_doppler = 1);

// Strict local maxima on the torus (8-neighborhood). TopP keeps the largest
// p of them, ties broken by lower delay bin then lower |Doppler| bin;
// FixedThreshold keeps every local maximum at or above fraction * global max.
// delay_limit > 0 restricts the returned peaks to delay bins below it, which
// confines comb schemes to their unambiguous window.
Detection detect_peaks(const DelayDopplerMap& map, const DetectionMode& mode,
                       std::size_t delay_limit = 0);

TargetEstimate bins_to_range_velocity(const PeakBin& bin, const DelayDopplerMap& map,
                                      const SystemParams& params);

// Snap a range readout to an integer multiple of the given quantum.
double quantize_range(double range_m, double quantum_m);

// Greedy matching by descending peak power: each estimate claims the nearest
// still-unclaimed true target. Pairs farther apart than miss_radius_m count
// as misses and are excluded from the mean squared error.
RangeMseReport range_mse(const RadarScene& scene, const std::vector<TargetEstimate>& estimates,
                         double miss_radius_m);

}  // namespace isac
