#include "pilots.hpp"

#include <cmath>
#include <numeric>

namespace isac {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::APS: return "aps";
    case Scheme::PS: return "ps";
    case Scheme::CI: return "ci";
    case Scheme::CB: return "cb";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "aps") return Scheme::APS;
  if (name == "ps") return Scheme::PS;
  if (name == "ci") return Scheme::CI;
  if (name == "cb") return Scheme::CB;
  throw error(errc::validation, "unknown scheme '" + name + "' (expected aps, ps, ci, or cb)");
}

void SystemParams::validate() const {
  if (n <= 0 || !is_pow2(static_cast<std::size_t>(n)))
    throw error(errc::validation, "system.n must be a power of two, got " + std::to_string(n));
  if (m <= 0 || !is_pow2(static_cast<std::size_t>(m)))
    throw error(errc::validation, "system.m must be a power of two, got " + std::to_string(m));
  if (!(n_cp > 0 && n_cp < n))
    throw error(errc::validation, "system.n_cp must lie in (0, n), got " + std::to_string(n_cp));
  if (!(delta_f > 0.0))
    throw error(errc::validation, "system.delta_f_hz must be positive");
  if (!(f_c > 0.0))
    throw error(errc::validation, "system.f_c_hz must be positive");
  if (!(c > 0.0))
    throw error(errc::validation, "system.c_mps must be positive");
}

void SchemeParams::validate(const SystemParams& params) const {
  if (rho_p_inv < 1)
    throw error(errc::validation, "scheme.rho_p_inv must be >= 1");
  if (rho_n_inv < 1)
    throw error(errc::validation, "scheme.rho_n_inv must be >= 1");
  if (rho_cp_inv < 0)
    throw error(errc::validation, "scheme.rho_cp_inv must be >= 0 (0 derives n/n_cp)");
  if (kind == Scheme::CI && params.n % rho_p_inv != 0)
    throw error(errc::validation, "CI comb factor must divide n: n=" + std::to_string(params.n) +
                                      ", rho_p_inv=" + std::to_string(rho_p_inv));
  if (kind == Scheme::CB && params.n % rho_n_inv != 0)
    throw error(errc::validation, "CB block factor must divide n: n=" + std::to_string(params.n) +
                                      ", rho_n_inv=" + std::to_string(rho_n_inv));
  if ((kind == Scheme::APS || kind == Scheme::PS) && rho_p_inv != 1)
    throw error(errc::validation, "full-band schemes require rho_p_inv = 1");
  if (kind == Scheme::PS && rho_cp_inv != 0 && params.n % rho_cp_inv != 0)
    throw error(errc::validation, "PS UE count must divide n");
}

int SchemeParams::ps_count(const SystemParams& params) const {
  if (rho_cp_inv > 0) return rho_cp_inv;
  if (params.n % params.n_cp != 0)
    throw error(errc::validation, "PS needs n divisible by n_cp to derive its UE count");
  return params.n / params.n_cp;
}

cgrid generate_pilot_grid(const SystemParams& params, RandomStream& stream) {
  params.validate();
  cgrid g(static_cast<std::size_t>(params.n), static_cast<std::size_t>(params.m));
  const double a = 1.0 / std::sqrt(2.0);
  for (cplx& v : g.a) {
    const std::uint64_t bits = stream.next_u64();
    v = cplx((bits & 1) ? a : -a, (bits & 2) ? a : -a);
  }
  return g;
}

AdmissionResult admit_ues(const SchemeParams& scheme, const SystemParams& params,
                          const std::vector<int>& tap_counts) {
  scheme.validate(params);
  for (int l : tap_counts)
    if (l < 1 || l > params.n_cp - 1)
      throw error(errc::validation, "tap count " + std::to_string(l) + " outside [1, n_cp-1]");

  AdmissionResult res;
  if (scheme.kind == Scheme::APS) {
    long long acc = 0;
    for (int l : tap_counts) {
      if (acc + l > params.n) break;
      acc += l;
      res.admitted.push_back(l);
    }
    res.supported = static_cast<int>(res.admitted.size());
    res.rejected = static_cast<int>(tap_counts.size()) - res.supported;
    return res;
  }

  int capacity = 0;
  switch (scheme.kind) {
    case Scheme::PS: capacity = scheme.ps_count(params); break;
    case Scheme::CI: capacity = scheme.rho_p_inv; break;
    case Scheme::CB: capacity = scheme.rho_n_inv; break;
    case Scheme::APS: break;
  }
  const int take = std::min<int>(capacity, static_cast<int>(tap_counts.size()));
  res.admitted.assign(tap_counts.begin(), tap_counts.begin() + take);
  res.supported = capacity;
  res.shortfall = take < capacity;
  res.rejected = static_cast<int>(tap_counts.size()) - take;
  return res;
}

std::vector<int> compute_offsets(const std::vector<int>& admitted_taps) {
  std::vector<int> offsets(admitted_taps.size());
  int acc = 0;
  for (std::size_t u = 0; u < admitted_taps.size(); ++u) {
    offsets[u] = acc;
    acc += admitted_taps[u];
  }
  return offsets;
}

cgrid apply_phase_shift(const cgrid& grid, int n_u, bool symbol_indexed) {
  if (n_u < 0 || static_cast<std::size_t>(n_u) >= grid.rows)
    throw error(errc::invalid_argument, "phase-shift offset outside [0, N)");
  cgrid out(grid.rows, grid.cols);
  const double base = -2.0 * kPi * static_cast<double>(n_u) / static_cast<double>(grid.rows);
  for (std::size_t m = 0; m < grid.cols; ++m) {
    const double factor = symbol_indexed ? base * static_cast<double>(m) : base;
    for (std::size_t k = 0; k < grid.rows; ++k)
      out.at(k, m) = grid.at(k, m) * std::polar(1.0, factor * static_cast<double>(k));
  }
  return out;
}

std::vector<int> allocate_subcarriers(const SchemeParams& scheme, const SystemParams& params,
                                      int ue_index) {
  scheme.validate(params);
  std::vector<int> set;
  switch (scheme.kind) {
    case Scheme::CI: {
      if (ue_index < 0 || ue_index >= scheme.rho_p_inv)
        throw error(errc::invalid_argument, "CI UE index outside [0, 1/rho_p)");
      for (int k = ue_index; k < params.n; k += scheme.rho_p_inv) set.push_back(k);
      break;
    }
    case Scheme::CB: {
      if (ue_index < 0 || ue_index >= scheme.rho_n_inv)
        throw error(errc::invalid_argument, "CB UE index outside [0, 1/rho_n)");
      const int block = params.n / scheme.rho_n_inv;
      for (int k = ue_index * block; k < (ue_index + 1) * block; ++k) set.push_back(k);
      break;
    }
    case Scheme::APS:
    case Scheme::PS: {
      set.resize(static_cast<std::size_t>(params.n));
      std::iota(set.begin(), set.end(), 0);
      break;
    }
  }
  return set;
}

int cp_length_requirement(int l_max, double r_max_m, const SystemParams& params) {
  if (l_max < 1) throw error(errc::invalid_argument, "l_max must be >= 1");
  if (r_max_m < 0.0) throw error(errc::invalid_argument, "r_max must be >= 0");
  const double round_trip = 2.0 * params.f_s() * r_max_m / params.c;
  const int guard = static_cast<int>(std::ceil(round_trip));
  return std::max(l_max, guard);
}

double power_scaling(const SchemeParams& scheme) {
  if (scheme.power == PowerMode::PC) return 1.0;
  switch (scheme.kind) {
    case Scheme::CI: return std::sqrt(static_cast<double>(scheme.rho_p_inv));
    case Scheme::CB: return std::sqrt(static_cast<double>(scheme.rho_n_inv));
    case Scheme::APS:
    case Scheme::PS: return 1.0;
  }
  return 1.0;
}

PilotPlan build_plan(const SchemeParams& scheme, const SystemParams& params,
                     const AdmissionResult& admission) {
  scheme.validate(params);
  PilotPlan plan;
  plan.kind = scheme.kind;
  const double amp = power_scaling(scheme);
  const std::vector<int> offsets = scheme.kind == Scheme::APS
                                       ? compute_offsets(admission.admitted)
                                       : std::vector<int>();
  const std::size_t count = admission.admitted.size();
  plan.ue.resize(count);
  for (std::size_t u = 0; u < count; ++u) {
    UePlan& ue = plan.ue[u];
    ue.l_u = admission.admitted[u];
    ue.amplitude = amp;
    ue.subcarriers = allocate_subcarriers(scheme, params, static_cast<int>(u));
    switch (scheme.kind) {
      case Scheme::APS:
        ue.n_u = offsets[u];
        if (ue.n_u + ue.l_u > params.n)
          throw error(errc::validation, "APS admission exceeded the delay budget");
        break;
      case Scheme::PS:
        ue.n_u = static_cast<int>(u) * params.n_cp;
        break;
      case Scheme::CI:
      case Scheme::CB:
        ue.n_u = 0;
        break;
    }
  }
  return plan;
}

cgrid transmitted_grid(const cgrid& x_base, const UePlan& ue, bool symbol_indexed) {
  cgrid g(x_base.rows, x_base.cols);
  for (int k : ue.subcarriers) {
    if (k < 0 || static_cast<std::size_t>(k) >= x_base.rows)
      throw error(errc::invalid_argument, "transmitted grid: subcarrier out of range");
    for (std::size_t m = 0; m < g.cols; ++m)
      g.at(static_cast<std::size_t>(k), m) =
          ue.amplitude * x_base.at(static_cast<std::size_t>(k), m);
  }
  if (ue.n_u != 0) g = apply_phase_shift(g, ue.n_u, symbol_indexed);
  return g;
}

}  // namespace isac
