#include "isac_lab.h"

#include "config.hpp"
#include "experiments.hpp"

#include "json.hpp"

#include <cstring>
#include <string>

struct isac_config {
  isac::KeyValues kv;
};

struct isac_result {
  isac::RunOutcome outcome;
};

namespace {

thread_local std::string t_last_error;

isac_status_t set_error(int code, const std::string& what) {
  t_last_error = what;
  return static_cast<isac_status_t>(code);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

#define ISAC_TRY try {
#define ISAC_CATCH                                            \
  }                                                           \
  catch (const isac::error& e) {                              \
    return set_error(e.code, e.what());                       \
  }                                                           \
  catch (const std::exception& e) {                           \
    return set_error(ISAC_ERR_INTERNAL, e.what());            \
  }                                                           \
  catch (...) {                                               \
    return set_error(ISAC_ERR_INTERNAL, "unknown failure");   \
  }

extern "C" {

const char* isac_version(void) { return "0.1.0"; }

const char* isac_last_error(void) { return t_last_error.c_str(); }

isac_config_t* isac_config_create(void) { return new (std::nothrow) isac_config; }

isac_status_t isac_config_load_file(isac_config_t* cfg, const char* path) {
  ISAC_TRY
  if (!cfg || !path)
    return set_error(ISAC_ERR_INVALID_ARGUMENT, "config handle and path must not be null");
  for (const auto& [key, value] : isac::parse_config_file(path)) cfg->kv[key] = value;
  return ISAC_OK;
  ISAC_CATCH
}

isac_status_t isac_config_set(isac_config_t* cfg, const char* assignment) {
  ISAC_TRY
  if (!cfg || !assignment)
    return set_error(ISAC_ERR_INVALID_ARGUMENT, "config handle and assignment must not be null");
  isac::apply_assignment(cfg->kv, assignment);
  return ISAC_OK;
  ISAC_CATCH
}

void isac_config_destroy(isac_config_t* cfg) { delete cfg; }

isac_status_t isac_run(const char* experiment_id, const isac_config_t* cfg,
                       isac_result_t** out) {
  ISAC_TRY
  if (!experiment_id || !out)
    return set_error(ISAC_ERR_INVALID_ARGUMENT, "experiment id and result slot must not be null");
  *out = nullptr;
  isac::RunOutcome outcome =
      isac::run_experiment(experiment_id, cfg ? cfg->kv : isac::KeyValues{});
  *out = new isac_result{std::move(outcome)};
  return ISAC_OK;
  ISAC_CATCH
}

const char* isac_result_summary_json(const isac_result_t* result) {
  return result ? result->outcome.summary_json.c_str() : "";
}

isac_status_t isac_result_aggregate(const isac_result_t* result, const char* metric, double* mean,
                                    double* std_error) {
  ISAC_TRY
  if (!result || !metric)
    return set_error(ISAC_ERR_INVALID_ARGUMENT, "result handle and metric must not be null");
  const isac::AggregateValue& a = isac::find_aggregate(result->outcome, metric);
  if (mean) *mean = a.mean;
  if (std_error) *std_error = a.std_error;
  return ISAC_OK;
  ISAC_CATCH
}

void isac_result_destroy(isac_result_t* result) { delete result; }

char* isac_catalog_json(void) {
  try {
    nlohmann::json catalog = nlohmann::json::array();
    for (const isac::ExperimentInfo& info : isac::builtin_experiments()) {
      catalog.push_back(
          {{"id", info.id}, {"summary", info.summary}, {"defaults", info.defaults}});
    }
    return dup_string(catalog.dump(2));
  } catch (const std::exception& e) {
    set_error(ISAC_ERR_INTERNAL, e.what());
    return nullptr;
  }
}

char* isac_tables_text(int n, int literal_formulas) {
  try {
    return dup_string(isac::tables_text(n, literal_formulas != 0));
  } catch (const isac::error& e) {
    set_error(e.code, e.what());
    return nullptr;
  } catch (const std::exception& e) {
    set_error(ISAC_ERR_INTERNAL, e.what());
    return nullptr;
  }
}

void isac_string_free(char* text) { delete[] text; }

}  // extern "C"
