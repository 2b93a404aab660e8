#include "experiments.hpp"

#include "estimator.hpp"
#include "metrics.hpp"
#include "radar.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace isac {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Collects everything written for one run so the summary can list it.
struct OutputSink {
  std::filesystem::path dir;
  std::vector<std::string> files;

  explicit OutputSink(const std::string& out_dir) : dir(out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
      throw error(errc::io, "cannot create output directory '" + out_dir + "': " + ec.message());
  }

  std::ofstream open(const std::string& name) {
    const std::filesystem::path path = dir / name;
    std::ofstream out(path);
    if (!out) throw error(errc::io, "cannot write '" + path.string() + "'");
    files.push_back(name);
    return out;
  }
};

using Row = std::vector<std::string>;

void write_csv(OutputSink& sink, const std::string& name, const Row& header,
               const std::vector<Row>& rows) {
  std::ofstream out = sink.open(name);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void write_text(OutputSink& sink, const std::string& name, const std::string& text) {
  sink.open(name) << text;
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

// Standard error of the mean; 0 for fewer than two samples.
double stderr_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  const double n = static_cast<double>(v.size());
  return std::sqrt(acc / (n - 1.0) / n);
}

AggregateValue make_aggregate(const std::string& metric, const std::string& units,
                              const std::vector<double>& samples) {
  AggregateValue a;
  a.metric = metric;
  a.units = units;
  a.mean = mean_of(samples);
  a.std_error = stderr_of(samples, a.mean);
  a.trials = static_cast<int>(samples.size());
  return a;
}

AggregateValue scalar_aggregate(const std::string& metric, const std::string& units, double value,
                                int trials = 1) {
  AggregateValue a;
  a.metric = metric;
  a.units = units;
  a.mean = value;
  a.trials = trials;
  return a;
}

void reject_trials_key(const ConfigReader& cfg, const std::string& id) {
  if (cfg.has("trials"))
    throw error(errc::validation,
                "experiment '" + id + "' is deterministic; the 'trials' key does not apply");
}

// Admission count for one adaptive full-band trial: candidates are drawn until
// the cumulative tap total would exceed the available delay span.
int draw_admitted_count(const TapCountDistribution& dist, const SystemParams& params,
                        std::uint64_t seed, std::uint64_t trial) {
  long long acc = 0;
  int count = 0;
  while (count < params.n) {
    RandomStream taps(seed, trial, lane::taps, static_cast<std::uint64_t>(count));
    const int l = sample_tap_count(dist, params.n_cp, taps);
    if (acc + l > params.n) break;
    acc += l;
    ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// UE-capacity experiments

struct CapacityPoint {
  std::string label;   // value of the sweep variable, as written to the CSV
  std::string suffix;  // aggregate qualifier, e.g. "n_cp=16"
  SystemParams params;
  TapCountDistribution dist;
};

void run_capacity_sweep(const std::vector<CapacityPoint>& points, const std::string& x_name,
                        int trials, std::uint64_t seed, int threads, OutputSink& sink,
                        std::vector<AggregateValue>& agg) {
  const std::size_t n_points = points.size();
  std::vector<std::vector<double>> counts(n_points, std::vector<double>(trials));
  run_trials(trials, threads, [&](int t) {
    for (std::size_t pi = 0; pi < n_points; ++pi) {
      const std::uint64_t trial = static_cast<std::uint64_t>(t) * n_points + pi;
      counts[pi][t] = draw_admitted_count(points[pi].dist, points[pi].params, seed, trial);
    }
  });

  std::vector<Row> adaptive, expected, fixed, gain;
  for (std::size_t pi = 0; pi < n_points; ++pi) {
    const CapacityPoint& pt = points[pi];
    if (pt.params.n % pt.params.n_cp != 0)
      throw error(errc::validation, "fixed-slot baseline needs system.n divisible by system.n_cp");
    const double mean = mean_of(counts[pi]);
    const double se = stderr_of(counts[pi], mean);
    const double analytic = expected_ue_count(pt.dist, pt.params, SchemeParams{});
    const double baseline = static_cast<double>(pt.params.n / pt.params.n_cp);
    const double g = mean / baseline;
    adaptive.push_back({pt.label, fmt(mean), fmt(se)});
    expected.push_back({pt.label, fmt(analytic)});
    fixed.push_back({pt.label, fmt(baseline)});
    gain.push_back({pt.label, fmt(g)});
    agg.push_back(make_aggregate("mean_ue[aps][" + pt.suffix + "]", "UEs", counts[pi]));
    agg.push_back(scalar_aggregate("baseline_ue[" + pt.suffix + "]", "UEs", baseline, trials));
    agg.push_back(scalar_aggregate("gain[" + pt.suffix + "]", "ratio", g, trials));
  }
  write_csv(sink, "adaptive.csv", {x_name, "mean_ue", "stderr"}, adaptive);
  write_csv(sink, "adaptive_expected.csv", {x_name, "mean_ue"}, expected);
  write_csv(sink, "fixed.csv", {x_name, "ue"}, fixed);
  write_csv(sink, "gain.csv", {x_name, "gain"}, gain);
}

std::string capacity_plot(const std::string& x_name, const std::string& stem, bool log_x) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set terminal svg size 900,600 dynamic\n"
     << "set output '" << stem << ".svg'\n"
     << "set xlabel '" << x_name << "'\n"
     << "set ylabel 'mean admitted UEs'\n"
     << "set logscale y 2\n";
  if (log_x) gp << "set logscale x 2\n";
  gp << "set key top right\n"
     << "plot 'adaptive.csv' skip 1 using 1:2 with linespoints lw 2 title 'adaptive offsets', \\\n"
     << "     'adaptive_expected.csv' skip 1 using 1:2 with lines dt 2 title 'analytic mean', \\\n"
     << "     'fixed.csv' skip 1 using 1:2 with linespoints lw 2 title 'fixed slots'\n";
  return gp.str();
}

void run_se_vs_cp(ConfigReader& cfg, std::uint64_t seed, int threads, OutputSink& sink,
                  std::vector<AggregateValue>& agg) {
  const int n = cfg.get_int("system.n", 1024);
  const std::vector<int> cps = cfg.get_int_list("sweep.n_cp", {8, 16, 32, 64, 128, 256});
  const int trials = cfg.get_int_min("trials", 1000, 1);
  const TapCountDistribution dist = taps_from_config(cfg);

  std::vector<CapacityPoint> points;
  for (int n_cp : cps) {
    CapacityPoint pt;
    pt.label = std::to_string(n_cp);
    pt.suffix = "n_cp=" + std::to_string(n_cp);
    pt.params.n = n;
    pt.params.m = 1;
    pt.params.n_cp = n_cp;
    pt.params.validate();
    pt.dist = dist;
    points.push_back(pt);
  }
  run_capacity_sweep(points, "n_cp", trials, seed, threads, sink, agg);
  write_text(sink, "plot.gp", capacity_plot("cyclic prefix length", "se_vs_cp", true));
}

void run_se_vs_n(ConfigReader& cfg, std::uint64_t seed, int threads, OutputSink& sink,
                 std::vector<AggregateValue>& agg) {
  const std::vector<int> ns = cfg.get_int_list("sweep.n", {64, 128, 256, 512, 1024, 2048, 4096});
  const int n_cp = cfg.get_int("system.n_cp", 16);
  const int trials = cfg.get_int_min("trials", 1000, 1);
  const TapCountDistribution dist = taps_from_config(cfg);

  std::vector<CapacityPoint> points;
  for (int n : ns) {
    CapacityPoint pt;
    pt.label = std::to_string(n);
    pt.suffix = "n=" + std::to_string(n);
    pt.params.n = n;
    pt.params.m = 1;
    pt.params.n_cp = n_cp;
    pt.params.validate();
    pt.dist = dist;
    points.push_back(pt);
  }
  run_capacity_sweep(points, "n", trials, seed, threads, sink, agg);
  write_text(sink, "plot.gp", capacity_plot("subcarrier count", "se_vs_n", true));
}

void run_se_distributions(ConfigReader& cfg, std::uint64_t seed, int threads, OutputSink& sink,
                          std::vector<AggregateValue>& agg) {
  SystemParams params;
  params.n = cfg.get_int("system.n", 4096);
  params.m = 1;
  params.n_cp = cfg.get_int("system.n_cp", 16);
  params.validate();
  if (params.n % params.n_cp != 0)
    throw error(errc::validation, "fixed-slot baseline needs system.n divisible by system.n_cp");
  const std::vector<std::string> names =
      cfg.get_name_list("se.dists", {"truncated_normal", "gamma", "mirrored_gamma"});
  const double shape = cfg.get_double("taps.shape", 2.0);
  const double scale = cfg.get_double("taps.scale", 2.0);
  if (!(shape > 0.0) || !(scale > 0.0))
    throw error(errc::validation, "config keys 'taps.shape'/'taps.scale' must be positive");
  const int trials = cfg.get_int_min("trials", 1000, 1);

  std::vector<TapCountDistribution> dists;
  for (const std::string& name : names) {
    TapCountDistribution d;
    if (name == "truncated_normal") {
      d.kind = TapCountDistribution::Kind::TruncatedNormal;
    } else if (name == "gamma") {
      d.kind = TapCountDistribution::Kind::Gamma;
      d.a = shape;
      d.b = scale;
    } else if (name == "mirrored_gamma") {
      d.kind = TapCountDistribution::Kind::MirroredGamma;
      d.a = shape;
      d.b = scale;
    } else {
      throw error(errc::validation, "config key 'se.dists': unknown distribution '" + name + "'");
    }
    dists.push_back(d);
  }

  const std::size_t n_points = dists.size();
  std::vector<std::vector<double>> counts(n_points, std::vector<double>(trials));
  run_trials(trials, threads, [&](int t) {
    for (std::size_t pi = 0; pi < n_points; ++pi) {
      const std::uint64_t trial = static_cast<std::uint64_t>(t) * n_points + pi;
      counts[pi][t] = draw_admitted_count(dists[pi], params, seed, trial);
    }
  });

  const double baseline = static_cast<double>(params.n / params.n_cp);
  std::vector<Row> rows;
  for (std::size_t pi = 0; pi < n_points; ++pi) {
    const double mean = mean_of(counts[pi]);
    const double se = stderr_of(counts[pi], mean);
    const double analytic = expected_ue_count(dists[pi], params, SchemeParams{});
    rows.push_back({names[pi], fmt(mean), fmt(se), fmt(analytic), fmt(baseline)});
    agg.push_back(make_aggregate("mean_ue[aps][dist=" + names[pi] + "]", "UEs", counts[pi]));
  }
  agg.push_back(scalar_aggregate("baseline_ue", "UEs", baseline, trials));
  write_csv(sink, "distributions.csv", {"dist", "mean_ue", "stderr", "expected_ue", "fixed_ue"},
            rows);

  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set terminal svg size 900,600 dynamic\n"
     << "set output 'se_distributions.svg'\n"
     << "set style data histogram\n"
     << "set style fill solid 0.6\n"
     << "set ylabel 'mean admitted UEs'\n"
     << "plot 'distributions.csv' skip 1 using 2:xtic(1) title 'adaptive offsets', \\\n"
     << "     '' skip 1 using 5 title 'fixed slots'\n";
  write_text(sink, "plot.gp", gp.str());
}

// ---------------------------------------------------------------------------
// Pilot spectra

// One OFDM frame synthesized at os-times the nominal rate, band-centered, CP
// prepended per symbol; linear averaged periodogram across the symbols.
std::vector<double> synthesize_psd(const cgrid& tx, const SystemParams& params, int os) {
  const std::size_t n = static_cast<std::size_t>(params.n);
  const std::size_t big = n * static_cast<std::size_t>(os);
  std::vector<cvec> records;
  records.reserve(tx.cols);
  for (std::size_t m = 0; m < tx.cols; ++m) {
    cvec f(big, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      const cplx v = tx.at(k, m);
      if (v == cplx(0.0, 0.0)) continue;
      const std::size_t bin = k < n / 2 ? k : big - (n - k);
      f[bin] = v;
    }
    cvec time = idft(f);
    records.push_back(add_cp(time, static_cast<std::size_t>(params.n_cp) * os));
  }
  return periodogram_linear(records, 1);
}

void run_psd(ConfigReader& cfg, std::uint64_t seed, int /*threads*/, OutputSink& sink,
             std::vector<AggregateValue>& agg) {
  reject_trials_key(cfg, "psd");
  const SystemParams params = system_from_config(cfg);
  const int os = cfg.get_int_min("psd.oversample", 4, 1);
  const int rho_inv = cfg.get_int_min("scheme.ci.rho_p_inv", 4, 2);
  const std::string mask_path = cfg.get_string("mask.file", "data/masks/generic_ofdm_mask.txt");

  RandomStream pilots(seed, 0, lane::pilots, 0);
  const cgrid x_base = generate_pilot_grid(params, pilots);

  struct Curve {
    std::string name;
    SchemeParams scheme;
  };
  std::vector<Curve> curves;
  curves.push_back({"aps", SchemeParams{Scheme::APS, 1, 0, 1, PowerMode::PC}});
  curves.push_back({"ci_pc", SchemeParams{Scheme::CI, rho_inv, 0, 1, PowerMode::PC}});
  curves.push_back({"ci_nopc", SchemeParams{Scheme::CI, rho_inv, 0, 1, PowerMode::NonPC}});

  std::vector<std::vector<double>> linear;
  for (const Curve& c : curves) {
    c.scheme.validate(params);
    UePlan ue;
    ue.subcarriers = allocate_subcarriers(c.scheme, params, 0);
    ue.amplitude = power_scaling(c.scheme);
    linear.push_back(synthesize_psd(transmitted_grid(x_base, ue), params, os));
  }

  const std::size_t p = linear[0].size();
  double ref = 0.0;
  for (double v : linear[0]) ref = std::max(ref, v);
  if (!(ref > 0.0)) throw error(errc::internal, "reference spectrum is empty");
  const auto to_db = [&](double v) {
    return v > ref * 1e-40 ? 10.0 * std::log10(v / ref) : -400.0;
  };

  // Bin b of the padded transform covers normalized frequency 2*os*b/p, where
  // 1.0 is the nominal band edge; the upper half wraps to negative.
  const Mask mask = load_mask(mask_path);
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    std::vector<Row> rows;
    std::vector<SpectrumPoint> covered;
    for (std::size_t off = 0; off < p; ++off) {
      const std::size_t b = (off + p / 2 + 1) % p;  // ascending frequency order
      const double signed_bin = b <= p / 2 ? static_cast<double>(b)
                                           : static_cast<double>(b) - static_cast<double>(p);
      const double freq = 2.0 * os * signed_bin / static_cast<double>(p);
      const double db = to_db(linear[ci][b]);
      rows.push_back({fmt(freq), fmt(db)});
      const double af = std::abs(freq);
      if (af >= mask.front().freq && af <= mask.back().freq) covered.push_back({af, db});
    }
    write_csv(sink, curves[ci].name + ".csv", {"freq_normalized", "db"}, rows);
    const MaskReport rep = psd_mask_check(covered, mask);
    agg.push_back(scalar_aggregate("psd_min_margin_db[" + curves[ci].name + "]", "dB",
                                   rep.min_margin_db));
    agg.push_back(scalar_aggregate("psd_violations[" + curves[ci].name + "]", "count",
                                   static_cast<double>(rep.violations.size())));
  }

  {
    std::vector<Row> rows;
    for (const MaskPoint& mp : mask) rows.push_back({fmt(mp.freq), fmt(mp.db)});
    write_csv(sink, "mask.csv", {"freq_normalized", "db_limit"}, rows);
  }

  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set terminal svg size 900,600 dynamic\n"
     << "set output 'psd.svg'\n"
     << "set xlabel 'normalized frequency (band edge = 1)'\n"
     << "set ylabel 'power, dB rel. full-band peak'\n"
     << "set yrange [-80:15]\n"
     << "plot 'aps.csv' skip 1 using 1:2 with lines title 'full band', \\\n"
     << "     'ci_pc.csv' skip 1 using 1:2 with lines title 'comb', \\\n"
     << "     'ci_nopc.csv' skip 1 using 1:2 with lines title 'comb, boosted', \\\n"
     << "     'mask.csv' skip 1 using 1:2 with steps lw 2 lc 'black' title 'mask', \\\n"
     << "     'mask.csv' skip 1 using (-$1):2 with steps lw 2 lc 'black' notitle\n";
  write_text(sink, "plot.gp", gp.str());
}

// ---------------------------------------------------------------------------
// Channel-estimation MSE

void run_mse(const std::string& id, ConfigReader& cfg, PowerMode mode, std::uint64_t seed,
             int threads, OutputSink& sink, std::vector<AggregateValue>& agg) {
  const int n = cfg.get_int("system.n", 256);
  const std::vector<double> snrs = cfg.get_double_list("snr_db", {0, 5, 10, 15, 20, 25, 30});
  const std::vector<int> cps = cfg.get_int_list("mse.n_cp", {16, 64});
  const int trials = cfg.get_int_min("trials", 10000, 1);
  if (snrs.empty()) throw error(errc::validation, "config key 'snr_db': empty sweep");

  struct Variant {
    std::string name;
    int n_cp;
    TapCountDistribution dist;
  };
  std::vector<Variant> variants;
  for (int n_cp : cps) {
    TapCountDistribution flat;
    flat.kind = TapCountDistribution::Kind::Fixed;
    flat.fixed = 1;
    variants.push_back({"flat_ncp" + std::to_string(n_cp), n_cp, flat});
  }
  for (int n_cp : cps)
    variants.push_back({"selective_ncp" + std::to_string(n_cp), n_cp, TapCountDistribution{}});

  const char* scheme_tag[3] = {"aps", "ps", "ci"};
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    const Variant& v = variants[vi];
    SystemParams params;
    params.n = n;
    params.m = 1;
    params.n_cp = v.n_cp;
    params.validate();
    if (n % v.n_cp != 0)
      throw error(errc::validation, "config key 'mse.n_cp': system.n must be divisible by each entry");
    const int u_count = n / v.n_cp;

    SchemeParams schemes[3];
    schemes[0] = SchemeParams{Scheme::APS, 1, 0, 1, mode};
    schemes[1] = SchemeParams{Scheme::PS, 1, 0, 1, mode};
    schemes[2] = SchemeParams{Scheme::CI, u_count, 0, 1, mode};
    for (const SchemeParams& s : schemes) s.validate(params);

    std::vector<std::vector<std::vector<double>>> slots(
        3, std::vector<std::vector<double>>(snrs.size(), std::vector<double>(trials)));

    run_trials(trials, threads, [&](int t) {
      const std::uint64_t trial = static_cast<std::uint64_t>(vi) * trials +
                                  static_cast<std::uint64_t>(t);
      std::vector<int> offers(u_count);
      for (int u = 0; u < u_count; ++u) {
        RandomStream taps(seed, trial, lane::taps, static_cast<std::uint64_t>(u));
        offers[u] = sample_tap_count(v.dist, v.n_cp, taps);
      }
      RandomStream pilots(seed, trial, lane::pilots, 0);
      const cgrid x_base = generate_pilot_grid(params, pilots);
      std::vector<cvec> truth(u_count);
      for (int u = 0; u < u_count; ++u) {
        RandomStream ch(seed, trial, lane::channel, static_cast<std::uint64_t>(u));
        truth[u] = comm_cfr(realize_comm_channel(offers[u], ch), params);
      }
      RandomStream noise(seed, trial, lane::noise, 0);
      cgrid w(static_cast<std::size_t>(params.n), static_cast<std::size_t>(params.m));
      for (cplx& e : w.a) e = noise.cnormal();
      for (int si = 0; si < 3; ++si) {
        const AdmissionResult admission = admit_ues(schemes[si], params, offers);
        if (static_cast<int>(admission.admitted.size()) != u_count)
          throw error(errc::internal, "admission did not keep the full offered set");
        const PilotPlan plan = build_plan(schemes[si], params, admission);
        std::vector<cgrid> tx;
        tx.reserve(u_count);
        for (int u = 0; u < u_count; ++u) tx.push_back(transmitted_grid(x_base, plan.ue[u]));
        RandomStream quiet(seed, trial, lane::noise, 0);
        const cgrid y0 = apply_uplink(tx, truth, 0.0, quiet);
        // The whole separation pipeline is linear in Y, so one noiseless pass
        // and one unit-noise pass give the estimate at every noise level:
        // per element, err(sigma) = err0 + sigma * err_w, hence the per-UE MSE
        // is an exact quadratic in sigma.
        const bool comb = schemes[si].kind == Scheme::CI;
        const std::vector<cgrid> e0 =
            comb ? separate_ci(y0, x_base, plan) : separate_full_band(y0, x_base, plan);
        const std::vector<cgrid> ew =
            comb ? separate_ci(w, x_base, plan) : separate_full_band(w, x_base, plan);
        double a_sum = 0.0, b_sum = 0.0, c_sum = 0.0;
        for (int u = 0; u < u_count; ++u) {
          double a = 0.0, b = 0.0, c = 0.0;
          const cgrid& g0 = e0[u];
          const cgrid& gw = ew[u];
          for (std::size_t m = 0; m < g0.cols; ++m)
            for (std::size_t k = 0; k < g0.rows; ++k) {
              const cplx err0 = g0.at(k, m) - truth[u][k];
              const cplx errw = gw.at(k, m);
              a += std::norm(err0);
              b += err0.real() * errw.real() + err0.imag() * errw.imag();
              c += std::norm(errw);
            }
          const double cells = static_cast<double>(g0.rows * g0.cols);
          a_sum += a / cells;
          b_sum += b / cells;
          c_sum += c / cells;
        }
        for (std::size_t wi = 0; wi < snrs.size(); ++wi) {
          const double sigma2 = sigma2_from_snr_db(snrs[wi]);
          slots[si][wi][t] =
              (a_sum + 2.0 * std::sqrt(sigma2) * b_sum + sigma2 * c_sum) / u_count;
        }
      }
    });

    for (int si = 0; si < 3; ++si) {
      std::vector<Row> rows;
      for (std::size_t wi = 0; wi < snrs.size(); ++wi) {
        const double mean = mean_of(slots[si][wi]);
        rows.push_back({fmt(snrs[wi]), fmt(mean), fmt(stderr_of(slots[si][wi], mean))});
        agg.push_back(make_aggregate("mse[" + v.name + "][" + scheme_tag[si] + "][snr=" +
                                         fmt(snrs[wi]) + "]",
                                     "linear", slots[si][wi]));
      }
      write_csv(sink, std::string(scheme_tag[si]) + "_" + v.name + ".csv",
                {"snr_db", "mse", "stderr"}, rows);
    }
  }

  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set terminal svg size 900,600 dynamic\n"
     << "set xlabel 'SNR, dB'\n"
     << "set ylabel 'channel estimation MSE'\n"
     << "set logscale y 10\n"
     << "set key bottom left\n";
  for (const Variant& v : variants) {
    gp << "set output '" << id << "_" << v.name << ".svg'\n"
       << "plot 'aps_" << v.name << ".csv' skip 1 using 1:2 with linespoints title 'adaptive', \\\n"
       << "     'ps_" << v.name << ".csv' skip 1 using 1:2 with linespoints title 'fixed slots', \\\n"
       << "     'ci_" << v.name << ".csv' skip 1 using 1:2 with linespoints title 'comb'\n";
  }
  write_text(sink, "plot.gp", gp.str());
}

// ---------------------------------------------------------------------------
// Operation-count and signaling tables

struct TableRow {
  Scheme scheme;
  int u;
  int rho_inv;
};

std::vector<TableRow> table_rows() {
  return {
      {Scheme::APS, 8, 1},  {Scheme::APS, 16, 1}, {Scheme::APS, 32, 1},
      {Scheme::PS, 4, 4},   {Scheme::PS, 8, 8},   {Scheme::PS, 16, 16},
      {Scheme::CI, 4, 4},   {Scheme::CI, 8, 8},   {Scheme::CI, 16, 16},
  };
}

const char* kConventionNote =
    "note: transmitter totals cover the U inverse transforms (plus the offset\n"
    "phase ramp where one is applied); receiver totals count the delay-domain\n"
    "separation pipeline. Receiver additions are derived from the transform's\n"
    "addition kernel by default. An alternate convention derives them from the\n"
    "multiplication kernel plus the 2N zero-forcing operations, which changes\n"
    "receiver additions only; complexity.literal_formulas=1 (or tables_text's\n"
    "literal flag) selects it. Per-UE cells divide totals by U, rounded up.\n";

void run_complexity_tables(ConfigReader& cfg, OutputSink& sink,
                           std::vector<AggregateValue>& agg) {
  reject_trials_key(cfg, "complexity-tables");
  const int n = cfg.get_int("system.n", 256);
  const bool literal = cfg.get_flag("complexity.literal_formulas", false);

  std::vector<Row> rows;
  for (const TableRow& r : table_rows()) {
    const ComplexityReport c = complexity_report(r.scheme, n, r.u, literal);
    rows.push_back({scheme_name(r.scheme), std::to_string(r.u),
                    std::to_string(c.tx_additions), std::to_string(c.tx_multiplications),
                    std::to_string(c.bs_additions), std::to_string(c.bs_multiplications),
                    std::to_string(c.tx_additions_per_ue),
                    std::to_string(c.tx_multiplications_per_ue),
                    std::to_string(c.bs_additions_per_ue),
                    std::to_string(c.bs_multiplications_per_ue)});
  }
  write_csv(sink, "complexity.csv",
            {"scheme", "u", "tx_add", "tx_mult", "bs_add", "bs_mult", "tx_add_per_ue",
             "tx_mult_per_ue", "bs_add_per_ue", "bs_mult_per_ue"},
            rows);
  write_text(sink, "tables.txt", tables_text(n, literal));
  agg.push_back(scalar_aggregate("table_rows", "count", static_cast<double>(rows.size())));
}

void run_signaling_table(ConfigReader& cfg, OutputSink& sink, std::vector<AggregateValue>& agg) {
  reject_trials_key(cfg, "signaling-table");
  const int n = cfg.get_int("system.n", 256);

  std::vector<Row> rows;
  for (const TableRow& r : table_rows()) {
    const SignalingReport s = signaling_report(r.scheme, n, r.u, r.rho_inv);
    rows.push_back({scheme_name(r.scheme), std::to_string(r.u), std::to_string(s.total_bits),
                    std::to_string(s.per_ue_bits)});
  }
  write_csv(sink, "signaling.csv", {"scheme", "u", "total_bits", "bits_per_ue"}, rows);
  write_text(sink, "tables.txt", tables_text(n, false));
  agg.push_back(scalar_aggregate("table_rows", "count", static_cast<double>(rows.size())));
}

// ---------------------------------------------------------------------------
// Delay-mismatch response

void run_ambiguity(ConfigReader& cfg, OutputSink& sink, std::vector<AggregateValue>& agg) {
  reject_trials_key(cfg, "ambiguity");
  const int n = cfg.get_int_min("ambiguity.n", 32, 2);
  const int rho_p_inv = cfg.get_int_min("ambiguity.rho_p_inv", 4, 2);
  const int rho_n_inv = cfg.get_int_min("ambiguity.rho_n_inv", 4, 2);
  const int samples = cfg.get_int_min("ambiguity.samples", 2001, 2);
  const double delta_f = cfg.get_double("system.delta_f", 60e3);
  if (!(delta_f > 0.0))
    throw error(errc::validation, "config key 'system.delta_f': must be positive");
  if (n % rho_p_inv != 0 || n % rho_n_inv != 0)
    throw error(errc::validation, "ambiguity.n must be divisible by both inverse ratios");

  struct Curve {
    std::string name;
    double rho_p;
    int n_p;
  };
  const std::vector<Curve> curves = {
      {"full_band", 1.0, n},
      {"comb", 1.0 / rho_p_inv, n / rho_p_inv},
      {"block", 1.0, n / rho_n_inv},
  };

  for (const Curve& c : curves) {
    std::vector<Row> rows;
    for (int i = 0; i < samples; ++i) {
      const double x = static_cast<double>(i) / (samples - 1);  // delta_tau * delta_f
      rows.push_back({fmt(x), fmt(ambiguity(x / delta_f, c.rho_p, c.n_p, delta_f))});
    }
    write_csv(sink, c.name + ".csv", {"dtau_times_df", "magnitude"}, rows);
    const double null_x = c.rho_p / c.n_p;
    agg.push_back(scalar_aggregate("first_null[" + c.name + "]", "linear",
                                   ambiguity(null_x / delta_f, c.rho_p, c.n_p, delta_f)));
  }
  agg.push_back(scalar_aggregate(
      "grating_peak[comb]", "linear",
      ambiguity(curves[1].rho_p / delta_f, curves[1].rho_p, curves[1].n_p, delta_f)));

  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set terminal svg size 900,600 dynamic\n"
     << "set output 'ambiguity.svg'\n"
     << "set xlabel 'delay mismatch x subcarrier spacing'\n"
     << "set ylabel 'normalized response'\n"
     << "plot 'full_band.csv' skip 1 using 1:2 with lines title 'full band', \\\n"
     << "     'comb.csv' skip 1 using 1:2 with lines title 'comb', \\\n"
     << "     'block.csv' skip 1 using 1:2 with lines title 'block'\n";
  write_text(sink, "plot.gp", gp.str());
}

// ---------------------------------------------------------------------------
// Range-velocity sensing

struct RadarVariant {
  std::string name;
  SchemeParams scheme;
  int n_p = 0;            // occupied subcarriers
  double quantum_m = 0.0;  // block readout granularity; 0 = none
};

// Sensing runs on UE 0's grid alone; the plan is just its allocation and
// amplitude, no time offset.
UePlan sensing_ue(const SchemeParams& scheme, const SystemParams& params) {
  UePlan ue;
  ue.subcarriers = allocate_subcarriers(scheme, params, 0);
  ue.amplitude = power_scaling(scheme);
  return ue;
}

void run_range_velocity(ConfigReader& cfg, std::uint64_t seed, int threads, OutputSink& sink,
                        std::vector<AggregateValue>& agg) {
  const SystemParams params = system_from_config(cfg);
  const std::vector<RadarTarget> targets =
      parse_targets(cfg.get_string("radar.targets", "200:-40,400:0,600:40"));
  const double snr_db = cfg.get_double("radar.snr_db", 10.0);
  const std::vector<int> ci_inv = cfg.get_int_list("rv.ci_inv", {4, 8});
  const std::vector<int> cb_inv = cfg.get_int_list("rv.cb_inv", {4, 8});
  const int os = cfg.get_int_min("map.oversample", 1, 1);
  const int top_p = cfg.get_int_min("detect.top_p", 3, 1);
  const PowerMode mode = power_mode_from_config(cfg, PowerMode::NonPC);
  const int trials = cfg.get_int_min("trials", 100, 1);

  RadarScene nominal;
  nominal.targets = targets;
  nominal.validate(params);
  const double sigma2 = sigma2_from_snr_db(snr_db);

  std::vector<RadarVariant> variants;
  {
    RadarVariant aps;
    aps.name = "aps";
    aps.scheme = SchemeParams{Scheme::APS, 1, 0, 1, mode};
    aps.n_p = params.n;
    variants.push_back(aps);
    for (int inv : ci_inv) {
      RadarVariant v;
      v.name = "ci" + std::to_string(inv);
      v.scheme = SchemeParams{Scheme::CI, inv, 0, 1, mode};
      v.n_p = params.n / inv;
      variants.push_back(v);
    }
    for (int inv : cb_inv) {
      RadarVariant v;
      v.name = "cb" + std::to_string(inv);
      v.scheme = SchemeParams{Scheme::CB, 1, 0, inv, mode};
      v.n_p = params.n / inv;
      v.quantum_m = params.c / (2.0 * v.n_p * params.delta_f);
      variants.push_back(v);
    }
  }
  for (const RadarVariant& v : variants) v.scheme.validate(params);

  std::vector<Row> table;
  double full_band_mse = 0.0;
  for (const RadarVariant& v : variants) {
    const UePlan ue = sensing_ue(v.scheme, params);
    const double resolution = params.c / (2.0 * v.n_p * params.delta_f);
    const double miss_radius = 3.0 * resolution;
    const double r_ua = v.scheme.kind == Scheme::CI
                            ? params.c / (2.0 * v.scheme.rho_p_inv * params.delta_f)
                            : 0.0;

    // Comb estimates live inside the unambiguous window, so they are scored
    // against the true ranges folded into that window.
    RadarScene scoring = nominal;
    if (r_ua > 0.0)
      for (RadarTarget& t : scoring.targets) t.range_m = std::fmod(t.range_m, r_ua);

    std::vector<double> sq(trials), matched(trials), missed(trials);
    run_trials(trials, threads, [&](int t) {
      RadarScene scene = nominal;
      RadarScene folded = scoring;
      RandomStream amps(seed, t, lane::scene, 0);
      for (std::size_t p = 0; p < scene.targets.size(); ++p) {
        const cplx alpha = amps.cnormal();
        scene.targets[p].alpha = alpha;
        folded.targets[p].alpha = alpha;
      }
      RandomStream pilots(seed, t, lane::pilots, 0);
      const cgrid x_base = generate_pilot_grid(params, pilots);
      const cgrid tx = transmitted_grid(x_base, ue);
      RandomStream noise(seed, t, lane::noise, 0);
      const cgrid y = radar_echo(tx, scene, params, sigma2, noise);
      const cgrid g = zf_radar_response(y, tx, ue.subcarriers);
      const DelayDopplerMap map = delay_doppler_map(g, os, os);
      const std::size_t limit =
          v.scheme.kind == Scheme::CI ? map.nd / v.scheme.rho_p_inv : 0;
      const Detection det = detect_peaks(map, DetectionMode::top(top_p), limit);
      std::vector<TargetEstimate> ests;
      for (const PeakBin& pk : det.peaks) {
        TargetEstimate e = bins_to_range_velocity(pk, map, params);
        if (v.quantum_m > 0.0) e.range_m = quantize_range(e.range_m, v.quantum_m);
        ests.push_back(e);
      }
      const RangeMseReport rep = range_mse(folded, ests, miss_radius);
      sq[t] = rep.mse * rep.matched;
      matched[t] = rep.matched;
      missed[t] = rep.missed;
    });

    double total_sq = 0.0, total_matched = 0.0, total_missed = 0.0;
    std::vector<double> per_trial_mse;
    for (int t = 0; t < trials; ++t) {
      total_sq += sq[t];
      total_matched += matched[t];
      total_missed += missed[t];
      if (matched[t] > 0.0) per_trial_mse.push_back(sq[t] / matched[t]);
    }
    const double mse = total_matched > 0.0 ? total_sq / total_matched : 0.0;
    if (v.name == "aps") full_band_mse = mse;
    const double ratio = full_band_mse > 0.0 ? mse / full_band_mse : 0.0;

    table.push_back({v.name, std::to_string(v.n_p), fmt(mse), fmt(ratio), fmt(total_matched),
                     fmt(total_missed), fmt(miss_radius)});
    AggregateValue m = make_aggregate("range_mse[" + v.name + "]", "m^2", per_trial_mse);
    m.mean = mse;  // pooled over matched pairs, not over per-trial means
    m.trials = trials;
    agg.push_back(m);
    agg.push_back(scalar_aggregate("mse_vs_full[" + v.name + "]", "ratio", ratio, trials));
    agg.push_back(scalar_aggregate("matched[" + v.name + "]", "count", total_matched, trials));
    agg.push_back(scalar_aggregate("missed[" + v.name + "]", "count", total_missed, trials));

    // Noiseless unit-amplitude map at display oversampling, for the figures.
    {
      RadarScene unit = nominal;
      for (RadarTarget& t : unit.targets) t.alpha = cplx(1.0, 0.0);
      RandomStream pilots(seed, 0, lane::pilots, 0);
      const cgrid x_base = generate_pilot_grid(params, pilots);
      const cgrid tx = transmitted_grid(x_base, ue);
      RandomStream quiet(seed, 0, lane::noise, 0);
      const cgrid y = radar_echo(tx, unit, params, 0.0, quiet);
      const DelayDopplerMap map =
          delay_doppler_map(zf_radar_response(y, tx, ue.subcarriers), 4, 4);
      double peak = 0.0;
      for (double p : map.psi) peak = std::max(peak, p);
      std::ofstream out = sink.open("map_" + v.name + ".csv");
      out << "# delay bins x Doppler bins (Doppler centered), dB rel. peak\n";
      for (std::size_t d = 0; d < map.nd; ++d) {
        for (std::size_t j = 0; j < map.md; ++j) {
          const double rel = map.at(d, j) / peak;
          out << (j ? "," : "") << fmt(rel > 1e-14 ? 10.0 * std::log10(rel) : -140.0);
        }
        out << '\n';
      }
    }

    // Image count: peaks of a single-target noiseless map within 3 dB of its
    // global maximum; combs replicate the target once per decimation step.
    if (v.scheme.kind == Scheme::CI) {
      int min_images = 0;
      for (std::size_t p = 0; p < nominal.targets.size(); ++p) {
        RadarScene solo;
        solo.targets = {nominal.targets[p]};
        solo.targets[0].alpha = cplx(1.0, 0.0);
        RandomStream pilots(seed, 0, lane::pilots, 0);
        const cgrid x_base = generate_pilot_grid(params, pilots);
        const cgrid tx = transmitted_grid(x_base, ue);
        RandomStream quiet(seed, 0, lane::noise, 0);
        const cgrid y = radar_echo(tx, solo, params, 0.0, quiet);
        const DelayDopplerMap map =
            delay_doppler_map(zf_radar_response(y, tx, ue.subcarriers), os, os);
        const Detection det =
            detect_peaks(map, DetectionMode::threshold(std::pow(10.0, -0.3)));
        const int count = static_cast<int>(det.peaks.size());
        if (p == 0 || count < min_images) min_images = count;
      }
      agg.push_back(scalar_aggregate("grating_images[" + v.name + "]", "count",
                                     static_cast<double>(min_images)));
    }
  }

  write_csv(sink, "range_velocity.csv",
            {"scheme", "occupied", "range_mse_m2", "mse_vs_full", "matched", "missed",
             "miss_radius_m"},
            table);

  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set terminal svg size 800,700 dynamic\n"
     << "set view map\n"
     << "set xlabel 'Doppler bin (centered)'\n"
     << "set ylabel 'delay bin'\n"
     << "set cbrange [-60:0]\n";
  for (const RadarVariant& v : variants)
    gp << "set output 'map_" << v.name << ".svg'\n"
       << "splot 'map_" << v.name << ".csv' matrix with image notitle\n";
  write_text(sink, "plot.gp", gp.str());
}

}  // namespace

// ---------------------------------------------------------------------------

void run_trials(int trials, int threads, const std::function<void(int)>& fn) {
  if (trials < 1) throw error(errc::invalid_argument, "trial count must be at least 1");
  int workers = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
  if (workers < 1) workers = 1;
  workers = std::min(workers, trials);
  if (workers == 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first_error) first_error = std::current_exception();
          next.store(trials);
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

const std::vector<ExperimentInfo>& builtin_experiments() {
  static const std::vector<ExperimentInfo> catalog = {
      {"se-vs-cp",
       "mean admitted UEs vs cyclic-prefix length, adaptive offsets against fixed slots",
       {{"system.n", "1024"},
        {"sweep.n_cp", "8,16,32,64,128,256"},
        {"taps.dist", "truncated_normal"},
        {"trials", "1000"}}},
      {"se-vs-n",
       "mean admitted UEs vs subcarrier count at a fixed cyclic prefix",
       {{"sweep.n", "64,128,256,512,1024,2048,4096"},
        {"system.n_cp", "16"},
        {"taps.dist", "truncated_normal"},
        {"trials", "1000"}}},
      {"se-distributions",
       "admitted-UE capacity under different tap-count laws at large N",
       {{"system.n", "4096"},
        {"system.n_cp", "16"},
        {"se.dists", "truncated_normal,gamma,mirrored_gamma"},
        {"taps.shape", "2"},
        {"taps.scale", "2"},
        {"trials", "1000"}}},
      {"psd",
       "transmit spectra of full-band and comb pilots against an emission mask",
       {{"system.n", "256"},
        {"system.m", "64"},
        {"system.n_cp", "64"},
        {"psd.oversample", "4"},
        {"scheme.ci.rho_p_inv", "4"},
        {"mask.file", "data/masks/generic_ofdm_mask.txt"}}},
      {"mse-pc",
       "channel-estimation MSE vs SNR with per-subcarrier pilot power held fixed",
       {{"system.n", "256"},
        {"snr_db", "0,5,10,15,20,25,30"},
        {"mse.n_cp", "16,64"},
        {"trials", "10000"}}},
      {"mse-nopc",
       "channel-estimation MSE vs SNR with total pilot power equalized across schemes",
       {{"system.n", "256"},
        {"snr_db", "0,5,10,15,20,25,30"},
        {"mse.n_cp", "16,64"},
        {"trials", "10000"}}},
      {"complexity-tables",
       "transmitter and receiver operation counts per scheme and UE count",
       {{"system.n", "256"}, {"complexity.literal_formulas", "0"}}},
      {"signaling-table",
       "control bits needed to convey each UE's extraction window or slot index",
       {{"system.n", "256"}}},
      {"ambiguity",
       "delay-mismatch response of full-band, comb, and block pilot layouts",
       {{"ambiguity.n", "32"},
        {"ambiguity.rho_p_inv", "4"},
        {"ambiguity.rho_n_inv", "4"},
        {"ambiguity.samples", "2001"},
        {"system.delta_f", "60e3"}}},
      {"range-velocity",
       "multi-target range and velocity estimation accuracy with delay-Doppler maps",
       {{"system.n", "128"},
        {"system.m", "64"},
        {"system.n_cp", "32"},
        {"system.delta_f", "60e3"},
        {"system.f_c", "24e9"},
        {"radar.targets", "200:-40,400:0,600:40"},
        {"radar.snr_db", "10"},
        {"rv.ci_inv", "4,8"},
        {"rv.cb_inv", "4,8"},
        {"map.oversample", "1"},
        {"detect.top_p", "3"},
        {"scheme.power_mode", "nonpc"},
        {"trials", "100"}}},
  };
  return catalog;
}

const ExperimentInfo& find_experiment(const std::string& id) {
  for (const ExperimentInfo& info : builtin_experiments())
    if (info.id == id) return info;
  throw error(errc::invalid_argument,
              "unknown experiment '" + id + "'; 'isac-lab list' prints the catalog");
}

KeyValues merged_config(const ExperimentInfo& info, const KeyValues& overrides) {
  KeyValues kv = info.defaults;
  for (const auto& [key, value] : overrides) kv[key] = value;
  return kv;
}

const AggregateValue& find_aggregate(const RunOutcome& outcome, const std::string& metric) {
  for (const AggregateValue& a : outcome.aggregates)
    if (a.metric == metric) return a;
  throw error(errc::invalid_argument,
              "experiment '" + outcome.id + "' produced no aggregate named '" + metric + "'");
}

std::string tables_text(int n, bool literal_formulas) {
  std::ostringstream out;
  char line[256];
  out << "operation counts per OFDM symbol, N = " << n << "\n\n";
  std::snprintf(line, sizeof line, "%-8s %4s %12s %12s %12s %12s %10s %10s %10s %10s\n", "scheme",
                "U", "tx add", "tx mult", "rx add", "rx mult", "tx add/U", "tx mult/U", "rx add/U",
                "rx mult/U");
  out << line;
  for (const TableRow& r : table_rows()) {
    const ComplexityReport c = complexity_report(r.scheme, n, r.u, literal_formulas);
    std::snprintf(line, sizeof line, "%-8s %4d %12lld %12lld %12lld %12lld %10lld %10lld %10lld %10lld\n",
                  scheme_name(r.scheme), r.u, c.tx_additions, c.tx_multiplications, c.bs_additions,
                  c.bs_multiplications, c.tx_additions_per_ue, c.tx_multiplications_per_ue,
                  c.bs_additions_per_ue, c.bs_multiplications_per_ue);
    out << line;
  }
  out << "\nsignaling overhead, N = " << n << "\n\n";
  std::snprintf(line, sizeof line, "%-8s %4s %12s %12s\n", "scheme", "U", "total bits", "bits/UE");
  out << line;
  for (const TableRow& r : table_rows()) {
    const SignalingReport s = signaling_report(r.scheme, n, r.u, r.rho_inv);
    std::snprintf(line, sizeof line, "%-8s %4d %12lld %12lld\n", scheme_name(r.scheme), r.u,
                  s.total_bits, s.per_ue_bits);
    out << line;
  }
  out << "\n" << kConventionNote;
  return out.str();
}

RunOutcome run_experiment(const std::string& id, const KeyValues& overrides) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentInfo& info = find_experiment(id);
  const KeyValues kv = merged_config(info, overrides);
  ConfigReader cfg(kv);
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  const int threads = cfg.get_int("runner.threads", 0);
  const std::string out_dir = cfg.get_string("out", "out/" + id);

  OutputSink sink(out_dir);
  RunOutcome outcome;
  outcome.id = id;

  if (id == "se-vs-cp") {
    run_se_vs_cp(cfg, seed, threads, sink, outcome.aggregates);
  } else if (id == "se-vs-n") {
    run_se_vs_n(cfg, seed, threads, sink, outcome.aggregates);
  } else if (id == "se-distributions") {
    run_se_distributions(cfg, seed, threads, sink, outcome.aggregates);
  } else if (id == "psd") {
    run_psd(cfg, seed, threads, sink, outcome.aggregates);
  } else if (id == "mse-pc") {
    run_mse(id, cfg, PowerMode::PC, seed, threads, sink, outcome.aggregates);
  } else if (id == "mse-nopc") {
    run_mse(id, cfg, PowerMode::NonPC, seed, threads, sink, outcome.aggregates);
  } else if (id == "complexity-tables") {
    run_complexity_tables(cfg, sink, outcome.aggregates);
  } else if (id == "signaling-table") {
    run_signaling_table(cfg, sink, outcome.aggregates);
  } else if (id == "ambiguity") {
    run_ambiguity(cfg, sink, outcome.aggregates);
  } else if (id == "range-velocity") {
    run_range_velocity(cfg, seed, threads, sink, outcome.aggregates);
  } else {
    throw error(errc::internal, "experiment '" + id + "' is listed but not wired up");
  }
  cfg.finish();

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  json summary;
  summary["experiment"] = id;
  summary["seed"] = seed;
  summary["config"] = kv;
  json aggs = json::array();
  for (const AggregateValue& a : outcome.aggregates) {
    aggs.push_back({{"metric", a.metric},
                    {"units", a.units},
                    {"mean", a.mean},
                    {"std_error", a.std_error},
                    {"trials", a.trials}});
  }
  summary["aggregates"] = aggs;
  json files = json::array();
  for (const std::string& f : sink.files) files.push_back(f);
  files.push_back("summary.json");
  summary["outputs"] = files;
  summary["wall_ms"] = wall_ms;

  outcome.summary_json = summary.dump(2);
  sink.open("summary.json") << outcome.summary_json << '\n';

  outcome.files.reserve(sink.files.size());
  for (const std::string& f : sink.files)
    outcome.files.push_back((sink.dir / f).string());
  return outcome;
}

}  // namespace isac
