#pragma once

#include "config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace isac {

struct ExperimentInfo {
  std::string id;
  std::string summary;
  KeyValues defaults;
};

// Ten built-in studies: UE-capacity scaling, capacity under different tap
// laws, pilot spectra vs an emission mask, channel-estimation MSE under both
// power policies, operation-count and signaling tables, the delay-mismatch
// response, and the range-velocity sensing scenario.
const std::vector<ExperimentInfo>& builtin_experiments();
const ExperimentInfo& find_experiment(const std::string& id);

struct AggregateValue {
  std::string metric;
  std::string units;
  double mean = 0.0;
  double std_error = 0.0;  // 0 when a point has fewer than two trials
  int trials = 0;
};

struct RunOutcome {
  std::string id;
  std::vector<AggregateValue> aggregates;
  std::vector<std::string> files;
  std::string summary_json;
};

// Defaults overlaid with user entries; user entries win.
KeyValues merged_config(const ExperimentInfo& info, const KeyValues& overrides);

// Executes one experiment: Monte Carlo where applicable, deterministic
// synthesis otherwise. Writes CSVs, a plot script, and a JSON run summary
// into the configured output directory. Identical (config, seed) pairs
// produce byte-identical CSVs.
RunOutcome run_experiment(const std::string& id, const KeyValues& overrides);

const AggregateValue& find_aggregate(const RunOutcome& outcome, const std::string& metric);

// Text reproduction of the operation-count and signaling tables, including
// the note about the two BS-addition conventions.
std::string tables_text(int n, bool literal_formulas);

// Deterministic parallel map over trial indices [0, trials). Workers pull
// indices from a shared counter; the caller owns per-trial result slots, so
// completion order never affects the merged outcome. threads <= 0 selects
// the hardware concurrency.
void run_trials(int trials, int threads, const std::function<void(int)>& fn);

}  // namespace isac
