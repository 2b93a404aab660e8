#pragma once

#include "channel.hpp"
#include "pilots.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace isac {

using KeyValues = std::map<std::string, std::string>;

// "key = value" lines; '#' starts a comment anywhere; blank lines ignored.
// Duplicate keys within one source are rejected so typos cannot silently
// shadow earlier lines.
KeyValues parse_config_text(const std::string& text, const std::string& source_name = "config");
KeyValues parse_config_file(const std::string& path);

// One "key=value" override; inserts or replaces.
void apply_assignment(KeyValues& kv, const std::string& assignment);

// Typed access with field-named diagnostics. Every key that is read gets
// recorded; finish() rejects leftovers so misspelled keys surface instead of
// being ignored.
class ConfigReader {
 public:
  explicit ConfigReader(const KeyValues& kv) : kv_(kv) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  int get_int(const std::string& key, int fallback);
  int get_int_min(const std::string& key, int fallback, int min_value);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  double get_double(const std::string& key, double fallback);
  bool get_flag(const std::string& key, bool fallback);
  std::string get_string(const std::string& key, const std::string& fallback);
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback);
  std::vector<double> get_double_list(const std::string& key, const std::vector<double>& fallback);
  std::vector<std::string> get_name_list(const std::string& key,
                                         const std::vector<std::string>& fallback);

  void finish() const;  // throws on keys that were never read

 private:
  const std::string* raw(const std::string& key);
  KeyValues kv_;
  std::set<std::string> seen_;
};

// Shared typed views over the flat key space.
SystemParams system_from_config(ConfigReader& cfg);
TapCountDistribution taps_from_config(ConfigReader& cfg);
PowerMode power_mode_from_config(ConfigReader& cfg, PowerMode fallback);

// "range:velocity,range:velocity,..." in meters and m/s.
std::vector<RadarTarget> parse_targets(const std::string& text);

}  // namespace isac
