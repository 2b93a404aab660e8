#include "channel.hpp"

#include <cmath>

namespace isac {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int sample_tap_count(const TapCountDistribution& dist, int n_cp, RandomStream& stream) {
  if (n_cp < 2) throw error(errc::invalid_argument, "tap support [1, n_cp-1] is empty for n_cp < 2");
  const int lo = 1, hi = n_cp - 1;

  switch (dist.kind) {
    case TapCountDistribution::Kind::Fixed: {
      if (dist.fixed < lo || dist.fixed > hi)
        throw error(errc::validation, "fixed tap count outside [1, n_cp-1]");
      return dist.fixed;
    }
    case TapCountDistribution::Kind::TruncatedNormal: {
      const double mu = dist.a > 0.0 ? dist.a : static_cast<double>(n_cp) / 2.0;
      const double sigma = dist.b > 0.0 ? dist.b : static_cast<double>(n_cp) / 2.0;
      for (;;) {
        const int k = static_cast<int>(std::lround(mu + sigma * stream.normal()));
        if (k >= lo && k <= hi) return k;
      }
    }
    case TapCountDistribution::Kind::Gamma: {
      for (;;) {
        const int k = static_cast<int>(std::lround(stream.gamma(dist.a, dist.b)));
        if (k >= lo && k <= hi) return k;
      }
    }
    case TapCountDistribution::Kind::MirroredGamma: {
      for (;;) {
        const double g = stream.gamma(dist.a, dist.b);
        if (g > static_cast<double>(n_cp)) continue;  // truncate before reflecting
        int k = static_cast<int>(std::lround(static_cast<double>(n_cp) - g));
        if (k < lo) k = lo;
        if (k > hi) k = hi;
        return k;
      }
    }
  }
  throw error(errc::internal, "unreachable tap distribution kind");
}

CommChannel realize_comm_channel(int tap_count, RandomStream& stream) {
  if (tap_count < 1) throw error(errc::invalid_argument, "channel needs at least one tap");
  CommChannel ch;
  ch.gains.resize(static_cast<std::size_t>(tap_count));
  for (cplx& g : ch.gains) g = stream.cnormal();
  return ch;
}

cvec comm_cfr(const CommChannel& ch, const SystemParams& params) {
  if (ch.tap_count() > params.n)
    throw error(errc::invalid_argument, "channel taps exceed the subcarrier count");
  cvec padded(static_cast<std::size_t>(params.n), cplx(0.0, 0.0));
  std::copy(ch.gains.begin(), ch.gains.end(), padded.begin());
  return dft(padded);
}

void RadarScene::validate(const SystemParams& params) const {
  if (targets.empty()) throw error(errc::validation, "radar scene needs at least one target");
  for (const RadarTarget& t : targets) {
    const double tau = t.delay_s(params);
    if (!(tau >= 0.0 && tau < params.t_sym()))
      throw error(errc::validation, "target delay outside one symbol duration");
    if (!(std::abs(t.doppler_hz(params)) < 0.5 / params.t_sym()))
      throw error(errc::validation, "target Doppler outside the unambiguous band");
  }
}

cgrid radar_cfr(const RadarScene& scene, const SystemParams& params) {
  scene.validate(params);
  cgrid g(static_cast<std::size_t>(params.n), static_cast<std::size_t>(params.m));
  const double t_sym = params.t_sym();
  for (const RadarTarget& t : scene.targets) {
    const double tau = t.delay_s(params);
    const double nu = t.doppler_hz(params);
    for (std::size_t m = 0; m < g.cols; ++m) {
      const cplx dop = std::polar(1.0, 2.0 * kPi * static_cast<double>(m) * t_sym * nu);
      for (std::size_t k = 0; k < g.rows; ++k) {
        const cplx del =
            std::polar(1.0, -2.0 * kPi * static_cast<double>(k) * params.delta_f * tau);
        g.at(k, m) += t.alpha * del * dop;
      }
    }
  }
  return g;
}

cgrid apply_uplink(const std::vector<cgrid>& transmitted, const std::vector<cvec>& cfr,
                   double sigma2, RandomStream& noise) {
  if (transmitted.size() != cfr.size())
    throw error(errc::invalid_argument, "one channel per transmitted grid required");
  if (transmitted.empty()) throw error(errc::invalid_argument, "no transmitted grids");
  const std::size_t rows = transmitted.front().rows;
  const std::size_t cols = transmitted.front().cols;
  cgrid y(rows, cols);
  for (std::size_t u = 0; u < transmitted.size(); ++u) {
    const cgrid& x = transmitted[u];
    if (x.rows != rows || x.cols != cols)
      throw error(errc::invalid_argument, "transmitted grids must share dimensions");
    if (cfr[u].size() != rows)
      throw error(errc::invalid_argument, "channel response length must equal the row count");
    for (std::size_t m = 0; m < cols; ++m)
      for (std::size_t k = 0; k < rows; ++k) y.at(k, m) += cfr[u][k] * x.at(k, m);
  }
  if (sigma2 > 0.0) {
    const double scale = std::sqrt(sigma2);
    for (cplx& v : y.a) v += scale * noise.cnormal();
  }
  return y;
}

cgrid radar_echo(const cgrid& transmitted, const RadarScene& scene, const SystemParams& params,
                 double sigma2, RandomStream& noise) {
  cgrid g = radar_cfr(scene, params);
  if (g.rows != transmitted.rows || g.cols != transmitted.cols)
    throw error(errc::invalid_argument, "transmitted grid does not match the numerology");
  cgrid y(g.rows, g.cols);
  for (std::size_t i = 0; i < y.a.size(); ++i) y.a[i] = g.a[i] * transmitted.a[i];
  if (sigma2 > 0.0) {
    const double scale = std::sqrt(sigma2);
    for (cplx& v : y.a) v += scale * noise.cnormal();
  }
  return y;
}

double sigma2_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

}  // namespace isac
