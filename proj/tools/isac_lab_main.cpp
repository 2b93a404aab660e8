// Command-line front end. Everything goes through the C API in isac_lab.h;
// this file only parses arguments and formats output.
#include "isac_lab.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct ConfigDeleter {
  void operator()(isac_config_t* cfg) const { isac_config_destroy(cfg); }
};
struct ResultDeleter {
  void operator()(isac_result_t* result) const { isac_result_destroy(result); }
};
struct StringDeleter {
  void operator()(char* text) const { isac_string_free(text); }
};

int fail() {
  std::fprintf(stderr, "error: %s\n", isac_last_error());
  return 1;
}

int fail(isac_status_t status) {
  std::fprintf(stderr, "error: %s\n", isac_last_error());
  return static_cast<int>(status);
}

// Settings for `run`. They reach the config in a fixed order: config file,
// then the dedicated flags, then --set assignments, so later sources win.
struct RunArgs {
  std::string experiment;
  std::string config_file;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  bool has_seed = false;
  int trials = 0;
  bool has_trials = false;
  std::string out;
};

int do_run(const RunArgs& args) {
  std::unique_ptr<isac_config_t, ConfigDeleter> cfg(isac_config_create());
  if (!cfg) return fail();

  if (!args.config_file.empty())
    if (isac_status_t st = isac_config_load_file(cfg.get(), args.config_file.c_str()))
      return fail(st);
  if (args.has_seed)
    if (isac_status_t st = isac_config_set(cfg.get(), ("seed=" + std::to_string(args.seed)).c_str()))
      return fail(st);
  if (args.has_trials)
    if (isac_status_t st =
            isac_config_set(cfg.get(), ("trials=" + std::to_string(args.trials)).c_str()))
      return fail(st);
  if (!args.out.empty())
    if (isac_status_t st = isac_config_set(cfg.get(), ("out=" + args.out).c_str()))
      return fail(st);
  for (const std::string& assignment : args.sets)
    if (isac_status_t st = isac_config_set(cfg.get(), assignment.c_str()))
      return fail(st);

  isac_result_t* raw = nullptr;
  if (isac_status_t st = isac_run(args.experiment.c_str(), cfg.get(), &raw)) return fail(st);
  std::unique_ptr<isac_result_t, ResultDeleter> result(raw);

  const json summary = json::parse(isac_result_summary_json(result.get()));
  const std::string out_dir = summary["config"].value("out", "out/" + args.experiment);

  std::printf("experiment: %s\n", args.experiment.c_str());
  std::printf("seed:       %llu\n",
              static_cast<unsigned long long>(summary["seed"].get<std::uint64_t>()));
  std::printf("wall time:  %.2f s\n", summary["wall_ms"].get<double>() / 1000.0);
  std::printf("outputs (%s):\n", out_dir.c_str());
  for (const json& f : summary["outputs"]) std::printf("  %s\n", f.get<std::string>().c_str());

  std::printf("aggregates:\n");
  for (const json& a : summary["aggregates"]) {
    std::string line = "  " + a["metric"].get<std::string>() + " = ";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", a["mean"].get<double>());
    line += buf;
    if (const double se = a["std_error"].get<double>(); se > 0.0) {
      std::snprintf(buf, sizeof buf, " +/- %.3g", se);
      line += buf;
    }
    if (const std::string units = a["units"].get<std::string>(); !units.empty())
      line += " " + units;
    std::printf("%s\n", line.c_str());
  }
  return 0;
}

int do_list(bool with_defaults) {
  std::unique_ptr<char, StringDeleter> text(isac_catalog_json());
  if (!text) return fail();

  const json catalog = json::parse(text.get());
  std::size_t width = 0;
  for (const json& entry : catalog)
    width = std::max(width, entry["id"].get<std::string>().size());
  for (const json& entry : catalog) {
    std::printf("%-*s  %s\n", static_cast<int>(width), entry["id"].get<std::string>().c_str(),
                entry["summary"].get<std::string>().c_str());
    if (with_defaults) {
      for (const auto& [key, value] : entry["defaults"].items())
        std::printf("%*s    %s = %s\n", static_cast<int>(width), "", key.c_str(),
                    value.get<std::string>().c_str());
    }
  }
  return 0;
}

int do_tables(int n, bool literal) {
  std::unique_ptr<char, StringDeleter> text(isac_tables_text(n, literal ? 1 : 0));
  if (!text) return fail();
  std::fputs(text.get(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uplink pilot-scheme simulator for joint communication and sensing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(isac_version()));

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run one experiment from the catalog");
  run->add_option("experiment", run_args.experiment, "experiment id (see `isac-lab list`)")
      ->required();
  run->add_option("--config", run_args.config_file, "config file with `key = value` lines");
  CLI::Option* seed_opt = run->add_option("--seed", run_args.seed, "master RNG seed");
  CLI::Option* trials_opt =
      run->add_option("--trials", run_args.trials, "Monte Carlo trial count");
  run->add_option("--out", run_args.out, "output directory (default out/<experiment>)");
  run->add_option("--set", run_args.sets, "extra key=value override; repeatable, applied last")
      ->allow_extra_args(false);

  bool with_defaults = false;
  CLI::App* list = app.add_subcommand("list", "list the experiment catalog");
  list->add_flag("--defaults", with_defaults, "also print each experiment's default config");

  int n = 256;
  bool literal = false;
  CLI::App* tables = app.add_subcommand("tables", "print operation-count and signaling tables");
  tables->add_option("--n", n, "FFT size, a power of two");
  tables->add_flag("--literal", literal,
                   "count receiver additions with the multiplication-kernel formula");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    run_args.has_seed = seed_opt->count() > 0;
    run_args.has_trials = trials_opt->count() > 0;
    return do_run(run_args);
  }
  if (list->parsed()) return do_list(with_defaults);
  if (tables->parsed()) return do_tables(n, literal);
  return 0;
}
