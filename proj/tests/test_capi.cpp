#include "doctest.h"
#include "isac_lab.h"

#include "json.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string capi_dir(const std::string& name) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "isac-lab-capi" / name;
  std::filesystem::remove_all(dir);
  return dir.string();
}

struct ConfigHandle {
  isac_config_t* cfg = isac_config_create();
  ~ConfigHandle() { isac_config_destroy(cfg); }
};

}  // namespace

TEST_CASE("version and error text are always readable strings") {
  CHECK(std::strlen(isac_version()) > 0);
  CHECK(isac_last_error() != nullptr);
}

TEST_CASE("config handles apply overrides and reject malformed input") {
  ConfigHandle h;
  REQUIRE(h.cfg != nullptr);
  CHECK(isac_config_set(h.cfg, "trials=3") == ISAC_OK);
  CHECK(isac_config_set(h.cfg, "trials=5") == ISAC_OK);

  CHECK(isac_config_set(h.cfg, "nonsense") == ISAC_ERR_VALIDATION);
  CHECK(std::string(isac_last_error()).find("key=value") != std::string::npos);
  CHECK(isac_config_set(nullptr, "a=1") == ISAC_ERR_INVALID_ARGUMENT);
  CHECK(isac_config_set(h.cfg, nullptr) == ISAC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("config files merge under later-wins semantics") {
  const std::string path = std::filesystem::temp_directory_path() / "isac_capi_cfg.txt";
  std::ofstream(path) << "trials = 9\nsweep.n_cp = 32\n";

  ConfigHandle h;
  CHECK(isac_config_set(h.cfg, "trials=2") == ISAC_OK);
  CHECK(isac_config_load_file(h.cfg, path.c_str()) == ISAC_OK);  // file overrides the earlier set
  CHECK(isac_config_set(h.cfg, "system.n=256") == ISAC_OK);
  CHECK(isac_config_set(h.cfg, ("out=" + capi_dir("merge")).c_str()) == ISAC_OK);

  isac_result_t* result = nullptr;
  REQUIRE(isac_run("se-vs-cp", h.cfg, &result) == ISAC_OK);
  const nlohmann::json j = nlohmann::json::parse(isac_result_summary_json(result));
  CHECK(j.at("config").at("trials") == "9");
  CHECK(j.at("config").at("sweep.n_cp") == "32");
  isac_result_destroy(result);

  CHECK(isac_config_load_file(h.cfg, "/nonexistent/isac.cfg") == ISAC_ERR_IO);
}

TEST_CASE("runs surface typed status codes") {
  isac_result_t* result = nullptr;
  CHECK(isac_run("no-such-study", nullptr, &result) == ISAC_ERR_INVALID_ARGUMENT);
  CHECK(result == nullptr);
  CHECK(std::string(isac_last_error()).find("no-such-study") != std::string::npos);

  ConfigHandle trials;
  CHECK(isac_config_set(trials.cfg, "trials=4") == ISAC_OK);
  CHECK(isac_config_set(trials.cfg, ("out=" + capi_dir("det-trials")).c_str()) == ISAC_OK);
  CHECK(isac_run("ambiguity", trials.cfg, &result) == ISAC_ERR_VALIDATION);

  ConfigHandle mask;
  CHECK(isac_config_set(mask.cfg, "mask.file=/nonexistent/mask.txt") == ISAC_OK);
  CHECK(isac_config_set(mask.cfg, ("out=" + capi_dir("bad-mask")).c_str()) == ISAC_OK);
  CHECK(isac_run("psd", mask.cfg, &result) == ISAC_ERR_IO);

  CHECK(isac_run(nullptr, nullptr, &result) == ISAC_ERR_INVALID_ARGUMENT);
  CHECK(isac_run("psd", nullptr, nullptr) == ISAC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("results expose aggregates and the summary document") {
  ConfigHandle h;
  CHECK(isac_config_set(h.cfg, ("out=" + capi_dir("tables")).c_str()) == ISAC_OK);
  isac_result_t* result = nullptr;
  REQUIRE(isac_run("complexity-tables", h.cfg, &result) == ISAC_OK);

  double mean = 0.0, se = -1.0;
  CHECK(isac_result_aggregate(result, "table_rows", &mean, &se) == ISAC_OK);
  CHECK(mean == 9.0);
  CHECK(se == 0.0);
  CHECK(isac_result_aggregate(result, "table_rows", nullptr, nullptr) == ISAC_OK);
  CHECK(isac_result_aggregate(result, "no-such-metric", &mean, nullptr) ==
        ISAC_ERR_INVALID_ARGUMENT);

  const nlohmann::json j = nlohmann::json::parse(isac_result_summary_json(result));
  CHECK(j.at("experiment") == "complexity-tables");
  isac_result_destroy(result);

  CHECK(isac_result_summary_json(nullptr) == std::string());
  isac_result_destroy(nullptr);
}

TEST_CASE("catalog and tables come back as owned strings") {
  char* catalog = isac_catalog_json();
  REQUIRE(catalog != nullptr);
  const nlohmann::json j = nlohmann::json::parse(catalog);
  CHECK(j.size() >= 10);
  CHECK(j.at(0).contains("id"));
  CHECK(j.at(0).contains("summary"));
  CHECK(j.at(0).contains("defaults"));
  isac_string_free(catalog);

  char* tables = isac_tables_text(256, 0);
  REQUIRE(tables != nullptr);
  CHECK(std::string(tables).find("signaling overhead") != std::string::npos);
  isac_string_free(tables);

  CHECK(isac_tables_text(100, 0) == nullptr);  // not a power of two
  CHECK(std::strlen(isac_last_error()) > 0);
  isac_string_free(nullptr);
}
