#include "estimator.hpp"

#include <cmath>

namespace isac {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

cgrid estimate_composite_cfr(const cgrid& y, const cgrid& x_base) {
  if (y.rows != x_base.rows || y.cols != x_base.cols)
    throw error(errc::invalid_argument, "received and pilot grids must share dimensions");
  cgrid h(y.rows, y.cols);
  for (std::size_t i = 0; i < y.a.size(); ++i) {
    if (std::abs(x_base.a[i]) == 0.0)
      throw error(errc::invalid_argument, "zero pilot entry in zero-forcing division");
    h.a[i] = y.a[i] / x_base.a[i];
  }
  return h;
}

cgrid composite_cir(const cgrid& h_f) {
  cgrid cir(h_f.rows, h_f.cols);
  const double inv_n = 1.0 / static_cast<double>(h_f.rows);
  cvec col(h_f.rows);
  for (std::size_t m = 0; m < h_f.cols; ++m) {
    std::copy(h_f.col(m), h_f.col(m) + h_f.rows, col.begin());
    fft_inplace(col.data(), col.size(), true);
    for (std::size_t d = 0; d < h_f.rows; ++d) cir.at(d, m) = col[d] * inv_n;
  }
  return cir;
}

cgrid extract_ue_cfr(const cgrid& cir, int n_u, int l_u) {
  const int n = static_cast<int>(cir.rows);
  if (n_u < 0 || l_u < 1 || n_u + l_u > n)
    throw error(errc::invalid_argument, "delay segment outside [0, N)");
  cgrid out(cir.rows, cir.cols);
  cvec windowed(cir.rows);
  for (std::size_t m = 0; m < cir.cols; ++m) {
    std::fill(windowed.begin(), windowed.end(), cplx(0.0, 0.0));
    for (int d = n_u; d < n_u + l_u; ++d)
      windowed[static_cast<std::size_t>(d)] = cir.at(static_cast<std::size_t>(d), m);
    fft_inplace(windowed.data(), windowed.size(), false);
    for (int k = 0; k < n; ++k) {
      const cplx ramp = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) *
                                            static_cast<double>(n_u) / static_cast<double>(n));
      out.at(static_cast<std::size_t>(k), m) = windowed[static_cast<std::size_t>(k)] * ramp;
    }
  }
  return out;
}

std::vector<cgrid> separate_full_band(const cgrid& y, const cgrid& x_base, const PilotPlan& plan) {
  if (plan.kind != Scheme::APS && plan.kind != Scheme::PS)
    throw error(errc::invalid_argument, "full-band separation applies to APS and PS plans");
  const cgrid cir = composite_cir(estimate_composite_cfr(y, x_base));
  std::vector<cgrid> out;
  out.reserve(plan.ue.size());
  for (const UePlan& ue : plan.ue) out.push_back(extract_ue_cfr(cir, ue.n_u, ue.l_u));
  return out;
}

std::vector<cgrid> separate_ci(const cgrid& y, const cgrid& x_base, const PilotPlan& plan) {
  if (plan.kind != Scheme::CI)
    throw error(errc::invalid_argument, "comb separation applies to CI plans");
  const int n = static_cast<int>(y.rows);
  std::vector<cgrid> out;
  out.reserve(plan.ue.size());
  for (const UePlan& ue : plan.ue) {
    const int n_p = static_cast<int>(ue.subcarriers.size());
    if (!is_pow2(static_cast<std::size_t>(n_p)))
      throw error(errc::invalid_argument, "comb size must be a power of two");
    if (ue.l_u > n_p)
      throw error(errc::ambiguity,
                  "tap count " + std::to_string(ue.l_u) + " exceeds the comb window " +
                      std::to_string(n_p) + "; the CIR aliases");
    const int comb_offset = ue.subcarriers.front();
    cgrid est(y.rows, y.cols);
    cvec comb(static_cast<std::size_t>(n_p));
    cvec padded(y.rows);
    for (std::size_t m = 0; m < y.cols; ++m) {
      for (int i = 0; i < n_p; ++i) {
        const std::size_t k = static_cast<std::size_t>(ue.subcarriers[static_cast<std::size_t>(i)]);
        comb[static_cast<std::size_t>(i)] = y.at(k, m) / (ue.amplitude * x_base.at(k, m));
      }
      fft_inplace(comb.data(), comb.size(), true);
      std::fill(padded.begin(), padded.end(), cplx(0.0, 0.0));
      for (int l = 0; l < ue.l_u; ++l) {
        const cplx correction = std::polar(1.0, 2.0 * kPi * static_cast<double>(comb_offset) *
                                                    static_cast<double>(l) / static_cast<double>(n));
        padded[static_cast<std::size_t>(l)] =
            comb[static_cast<std::size_t>(l)] / static_cast<double>(n_p) * correction;
      }
      fft_inplace(padded.data(), padded.size(), false);
      for (int k = 0; k < n; ++k) est.at(static_cast<std::size_t>(k), m) = padded[static_cast<std::size_t>(k)];
    }
    out.push_back(std::move(est));
  }
  return out;
}

std::vector<BlockEstimate> separate_cb(const cgrid& y, const cgrid& x_base, const PilotPlan& plan) {
  if (plan.kind != Scheme::CB)
    throw error(errc::invalid_argument, "block separation applies to CB plans");
  std::vector<BlockEstimate> out;
  out.reserve(plan.ue.size());
  for (const UePlan& ue : plan.ue) {
    BlockEstimate est;
    est.subcarriers = ue.subcarriers;
    est.values = cgrid(ue.subcarriers.size(), y.cols);
    for (std::size_t m = 0; m < y.cols; ++m)
      for (std::size_t i = 0; i < ue.subcarriers.size(); ++i) {
        const std::size_t k = static_cast<std::size_t>(ue.subcarriers[i]);
        est.values.at(i, m) = y.at(k, m) / (ue.amplitude * x_base.at(k, m));
      }
    out.push_back(std::move(est));
  }
  return out;
}

EstimationReport mse_report(const std::vector<cvec>& truth, const std::vector<cgrid>& estimates) {
  if (truth.size() != estimates.size())
    throw error(errc::invalid_argument, "truth/estimate UE counts differ");
  EstimationReport rep;
  rep.per_ue_mse.reserve(truth.size());
  for (std::size_t u = 0; u < truth.size(); ++u) {
    const cgrid& est = estimates[u];
    if (truth[u].size() != est.rows)
      throw error(errc::invalid_argument, "truth length must equal the estimate's row count");
    double acc = 0.0;
    for (std::size_t m = 0; m < est.cols; ++m)
      for (std::size_t k = 0; k < est.rows; ++k) acc += std::norm(truth[u][k] - est.at(k, m));
    rep.per_ue_mse.push_back(acc / static_cast<double>(est.rows * est.cols));
  }
  for (double v : rep.per_ue_mse) rep.mean_mse += v;
  if (!rep.per_ue_mse.empty()) rep.mean_mse /= static_cast<double>(rep.per_ue_mse.size());
  return rep;
}

EstimationReport mse_report_blocks(const std::vector<cvec>& truth,
                                   const std::vector<BlockEstimate>& estimates) {
  if (truth.size() != estimates.size())
    throw error(errc::invalid_argument, "truth/estimate UE counts differ");
  EstimationReport rep;
  rep.per_ue_mse.reserve(truth.size());
  for (std::size_t u = 0; u < truth.size(); ++u) {
    const BlockEstimate& est = estimates[u];
    double acc = 0.0;
    for (std::size_t m = 0; m < est.values.cols; ++m)
      for (std::size_t i = 0; i < est.subcarriers.size(); ++i)
        acc += std::norm(truth[u][static_cast<std::size_t>(est.subcarriers[i])] - est.values.at(i, m));
    rep.per_ue_mse.push_back(acc / static_cast<double>(est.values.rows * est.values.cols));
  }
  for (double v : rep.per_ue_mse) rep.mean_mse += v;
  if (!rep.per_ue_mse.empty()) rep.mean_mse /= static_cast<double>(rep.per_ue_mse.size());
  return rep;
}

}  // namespace isac
