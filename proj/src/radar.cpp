#include "radar.hpp"

#include <algorithm>
#include <cmath>

namespace isac {

DetectionMode DetectionMode::top(int p) {
  if (p < 1) throw error(errc::invalid_argument, "detection: top-P count must be at least 1");
  DetectionMode m;
  m.kind = Kind::TopP;
  m.p = p;
  return m;
}

DetectionMode DetectionMode::threshold(double fraction) {
  if (!(fraction > 0.0) || !(fraction < 1.0))
    throw error(errc::invalid_argument, "detection: threshold fraction must lie in (0, 1)");
  DetectionMode m;
  m.kind = Kind::FixedThreshold;
  m.fraction = fraction;
  return m;
}

cgrid zf_radar_response(const cgrid& y, const cgrid& tx, const std::vector<int>& occupied) {
  if (y.rows != tx.rows || y.cols != tx.cols)
    throw error(errc::invalid_argument, "radar response: grid shapes differ");
  cgrid g(y.rows, y.cols);
  for (int k : occupied) {
    if (k < 0 || static_cast<std::size_t>(k) >= y.rows)
      throw error(errc::invalid_argument, "radar response: occupied subcarrier out of range");
    for (std::size_t m = 0; m < y.cols; ++m) {
      const cplx x = tx.at(static_cast<std::size_t>(k), m);
      if (std::abs(x) == 0.0)
        throw error(errc::invalid_argument, "radar response: zero transmitted symbol on an occupied subcarrier");
      g.at(static_cast<std::size_t>(k), m) = y.at(static_cast<std::size_t>(k), m) / x;
    }
  }
  return g;
}

DelayDopplerMap delay_doppler_map(const cgrid& g, int os_delay, int os_doppler) {
  if (g.rows == 0 || g.cols == 0)
    throw error(errc::invalid_argument, "delay-Doppler map: empty grid");
  if (os_delay < 1 || !is_pow2(static_cast<std::size_t>(os_delay)) || os_doppler < 1 ||
      !is_pow2(static_cast<std::size_t>(os_doppler)))
    throw error(errc::invalid_argument, "delay-Doppler map: oversampling factors must be powers of two");
  if (!is_pow2(g.rows) || !is_pow2(g.cols))
    throw error(errc::invalid_argument, "delay-Doppler map: grid dimensions must be powers of two");

  DelayDopplerMap map;
  map.n = g.rows;
  map.m = g.cols;
  map.os_delay = os_delay;
  map.os_doppler = os_doppler;
  map.nd = g.rows * static_cast<std::size_t>(os_delay);
  map.md = g.cols * static_cast<std::size_t>(os_doppler);
  map.psi.assign(map.nd * map.md, 0.0);

  // Delay axis: zero-padded inverse transform of each symbol's column.
  cgrid delayed(map.nd, g.cols);
  cvec buf(map.nd);
  for (std::size_t m = 0; m < g.cols; ++m) {
    std::fill(buf.begin(), buf.end(), cplx(0, 0));
    std::copy(g.col(m), g.col(m) + g.rows, buf.begin());
    fft_inplace(buf.data(), map.nd, true);
    std::copy(buf.begin(), buf.end(), delayed.col(m));
  }

  // Doppler axis: zero-padded forward transform across symbols, then power
  // with the Doppler index recentered so column j means ell = j - md/2.
  const double scale = 1.0 / (static_cast<double>(map.n) * static_cast<double>(map.m));
  cvec row(map.md);
  for (std::size_t d = 0; d < map.nd; ++d) {
    std::fill(row.begin(), row.end(), cplx(0, 0));
    for (std::size_t m = 0; m < g.cols; ++m) row[m] = delayed.at(d, m);
    fft_inplace(row.data(), map.md, false);
    for (std::size_t j = 0; j < map.md; ++j) {
      const std::size_t raw = (j + map.md / 2) % map.md;
      map.psi[d * map.md + j] = std::norm(row[raw]) * scale;
    }
  }
  return map;
}

namespace {

bool is_strict_local_max(const DelayDopplerMap& map, std::size_t d, std::size_t j) {
  const double v = map.at(d, j);
  for (int dd = -1; dd <= 1; ++dd) {
    for (int jj = -1; jj <= 1; ++jj) {
      if (dd == 0 && jj == 0) continue;
      const long rows = static_cast<long>(map.nd);
      const long cols = static_cast<long>(map.md);
      const std::size_t nd = static_cast<std::size_t>((static_cast<long>(d) + dd + rows) % rows);
      const std::size_t nj = static_cast<std::size_t>((static_cast<long>(j) + jj + cols) % cols);
      if (nd == d && nj == j) continue;  // wrap collapse on a length-1 axis
      if (!(v > map.at(nd, nj))) return false;
    }
  }
  return true;
}

}  // namespace

Detection detect_peaks(const DelayDopplerMap& map, const DetectionMode& mode,
                       std::size_t delay_limit) {
  if (mode.kind == DetectionMode::Kind::TopP && mode.p < 1)
    throw error(errc::invalid_argument, "detection: top-P count must be at least 1");
  if (mode.kind == DetectionMode::Kind::FixedThreshold &&
      (!(mode.fraction > 0.0) || !(mode.fraction < 1.0)))
    throw error(errc::invalid_argument, "detection: threshold fraction must lie in (0, 1)");
  const std::size_t d_end = (delay_limit > 0 && delay_limit < map.nd) ? delay_limit : map.nd;

  std::vector<PeakBin> maxima;
  double gmax = 0.0;
  for (std::size_t d = 0; d < d_end; ++d) {
    for (std::size_t j = 0; j < map.md; ++j) {
      gmax = std::max(gmax, map.at(d, j));
      if (is_strict_local_max(map, d, j)) maxima.push_back({d, j, map.at(d, j)});
    }
  }
  std::sort(maxima.begin(), maxima.end(), [&](const PeakBin& a, const PeakBin& b) {
    if (a.power != b.power) return a.power > b.power;
    if (a.d != b.d) return a.d < b.d;
    const long ea = std::labs(map.ell_of(a.j));
    const long eb = std::labs(map.ell_of(b.j));
    if (ea != eb) return ea < eb;
    return a.j < b.j;
  });

  Detection out;
  if (mode.kind == DetectionMode::Kind::TopP) {
    const std::size_t want = static_cast<std::size_t>(mode.p);
    if (maxima.size() < want) {
      out.peaks = maxima;
      out.shortfall = true;
    } else {
      out.peaks.assign(maxima.begin(), maxima.begin() + static_cast<std::ptrdiff_t>(want));
    }
  } else {
    const double cutoff = mode.fraction * gmax;
    for (const PeakBin& p : maxima)
      if (p.power >= cutoff) out.peaks.push_back(p);
  }
  return out;
}

TargetEstimate bins_to_range_velocity(const PeakBin& bin, const DelayDopplerMap& map,
                                      const SystemParams& params) {
  if (bin.d >= map.nd || bin.j >= map.md)
    throw error(errc::invalid_argument, "range-velocity conversion: bin outside the map");
  TargetEstimate est;
  est.delay_bin = bin.d;
  est.doppler_bin = map.ell_of(bin.j);
  est.power = bin.power;
  est.range_m = static_cast<double>(bin.d) * params.c /
                (2.0 * static_cast<double>(map.nd) * params.delta_f);
  est.velocity_mps = static_cast<double>(est.doppler_bin) * params.c * params.delta_f /
                     (2.0 * params.f_c * static_cast<double>(map.md));
  return est;
}

double quantize_range(double range_m, double quantum_m) {
  if (!(quantum_m > 0.0))
    throw error(errc::invalid_argument, "range quantization: quantum must be positive");
  return std::round(range_m / quantum_m) * quantum_m;
}

RangeMseReport range_mse(const RadarScene& scene, const std::vector<TargetEstimate>& estimates,
                         double miss_radius_m) {
  if (!(miss_radius_m > 0.0))
    throw error(errc::invalid_argument, "range mse: miss radius must be positive");
  std::vector<TargetEstimate> ordered = estimates;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const TargetEstimate& a, const TargetEstimate& b) { return a.power > b.power; });

  std::vector<bool> claimed(scene.targets.size(), false);
  RangeMseReport rep;
  double acc = 0.0;
  for (const TargetEstimate& est : ordered) {
    std::size_t best = scene.targets.size();
    double best_dist = 0.0;
    for (std::size_t t = 0; t < scene.targets.size(); ++t) {
      if (claimed[t]) continue;
      const double dist = std::abs(scene.targets[t].range_m - est.range_m);
      if (best == scene.targets.size() || dist < best_dist) {
        best = t;
        best_dist = dist;
      }
    }
    if (best == scene.targets.size() || best_dist > miss_radius_m) {
      ++rep.missed;
      continue;
    }
    claimed[best] = true;
    const double err = scene.targets[best].range_m - est.range_m;
    acc += err * err;
    ++rep.matched;
  }
  if (rep.matched > 0) rep.mse = acc / static_cast<double>(rep.matched);
  return rep;
}

}  // namespace isac
