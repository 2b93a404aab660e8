#include "config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace isac {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw error(errc::validation, "config key '" + key + "': expected an integer, got '" + v + "'");
  return value;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw error(errc::validation,
                "config key '" + key + "': expected a nonnegative integer, got '" + v + "'");
  return value;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  if (v.empty())
    throw error(errc::validation, "config key '" + key + "': expected a number, got ''");
  char* end = nullptr;
  const double value = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size())
    throw error(errc::validation, "config key '" + key + "': expected a number, got '" + v + "'");
  return value;
}

bool parse_flag(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw error(errc::validation, "config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& key, const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw error(errc::validation, "config key '" + key + "': empty list element");
    out.push_back(item);
  }
  if (out.empty()) throw error(errc::validation, "config key '" + key + "': empty list");
  return out;
}

}  // namespace

KeyValues parse_config_text(const std::string& text, const std::string& source_name) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw error(errc::validation,
                  source_name + " line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key))
      throw error(errc::validation, source_name + " line " + std::to_string(line_no) +
                                        ": invalid key '" + key + "'");
    if (value.empty())
      throw error(errc::validation, source_name + " line " + std::to_string(line_no) +
                                        ": key '" + key + "' has an empty value");
    if (!kv.emplace(key, value).second)
      throw error(errc::validation, source_name + " line " + std::to_string(line_no) +
                                        ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io, "config file: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void apply_assignment(KeyValues& kv, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw error(errc::validation, "override '" + assignment + "': expected key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (!valid_key(key))
    throw error(errc::validation, "override '" + assignment + "': invalid key '" + key + "'");
  if (value.empty())
    throw error(errc::validation, "override '" + assignment + "': empty value");
  kv[key] = value;
}

const std::string* ConfigReader::raw(const std::string& key) {
  seen_.insert(key);
  const auto it = kv_.find(key);
  return it == kv_.end() ? nullptr : &it->second;
}

int ConfigReader::get_int(const std::string& key, int fallback) {
  const std::string* v = raw(key);
  return v ? parse_int(key, *v) : fallback;
}

int ConfigReader::get_int_min(const std::string& key, int fallback, int min_value) {
  const int value = get_int(key, fallback);
  if (value < min_value)
    throw error(errc::validation, "config key '" + key + "': must be at least " +
                                      std::to_string(min_value) + ", got " + std::to_string(value));
  return value;
}

std::uint64_t ConfigReader::get_u64(const std::string& key, std::uint64_t fallback) {
  const std::string* v = raw(key);
  return v ? parse_u64(key, *v) : fallback;
}

double ConfigReader::get_double(const std::string& key, double fallback) {
  const std::string* v = raw(key);
  return v ? parse_double(key, *v) : fallback;
}

bool ConfigReader::get_flag(const std::string& key, bool fallback) {
  const std::string* v = raw(key);
  return v ? parse_flag(key, *v) : fallback;
}

std::string ConfigReader::get_string(const std::string& key, const std::string& fallback) {
  const std::string* v = raw(key);
  return v ? *v : fallback;
}

std::vector<int> ConfigReader::get_int_list(const std::string& key,
                                            const std::vector<int>& fallback) {
  const std::string* v = raw(key);
  if (!v) return fallback;
  std::vector<int> out;
  for (const std::string& item : split_list(key, *v)) out.push_back(parse_int(key, item));
  return out;
}

std::vector<double> ConfigReader::get_double_list(const std::string& key,
                                                  const std::vector<double>& fallback) {
  const std::string* v = raw(key);
  if (!v) return fallback;
  std::vector<double> out;
  for (const std::string& item : split_list(key, *v)) out.push_back(parse_double(key, item));
  return out;
}

std::vector<std::string> ConfigReader::get_name_list(const std::string& key,
                                                     const std::vector<std::string>& fallback) {
  const std::string* v = raw(key);
  return v ? split_list(key, *v) : fallback;
}

void ConfigReader::finish() const {
  for (const auto& [key, value] : kv_) {
    if (!seen_.count(key))
      throw error(errc::validation,
                  "config key '" + key + "' is not recognized by this experiment");
  }
}

SystemParams system_from_config(ConfigReader& cfg) {
  SystemParams params;
  params.n = cfg.get_int("system.n", params.n);
  params.m = cfg.get_int("system.m", params.m);
  params.n_cp = cfg.get_int("system.n_cp", params.n_cp);
  params.delta_f = cfg.get_double("system.delta_f", params.delta_f);
  params.f_c = cfg.get_double("system.f_c", params.f_c);
  params.validate();
  return params;
}

TapCountDistribution taps_from_config(ConfigReader& cfg) {
  TapCountDistribution dist;
  const std::string kind = cfg.get_string("taps.dist", "truncated_normal");
  if (kind == "truncated_normal") {
    dist.kind = TapCountDistribution::Kind::TruncatedNormal;
    dist.a = cfg.get_double("taps.mu", 0.0);
    dist.b = cfg.get_double("taps.sigma", 0.0);
  } else if (kind == "gamma" || kind == "mirrored_gamma") {
    dist.kind = kind == "gamma" ? TapCountDistribution::Kind::Gamma
                                : TapCountDistribution::Kind::MirroredGamma;
    dist.a = cfg.get_double("taps.shape", 2.0);
    dist.b = cfg.get_double("taps.scale", 2.0);
    if (!(dist.a > 0.0) || !(dist.b > 0.0))
      throw error(errc::validation, "config keys 'taps.shape'/'taps.scale' must be positive");
  } else if (kind == "fixed") {
    dist.kind = TapCountDistribution::Kind::Fixed;
    dist.fixed = cfg.get_int_min("taps.fixed", 1, 1);
  } else {
    throw error(errc::validation,
                "config key 'taps.dist': unknown distribution '" + kind +
                    "' (expected truncated_normal, gamma, mirrored_gamma, or fixed)");
  }
  return dist;
}

PowerMode power_mode_from_config(ConfigReader& cfg, PowerMode fallback) {
  const std::string name =
      cfg.get_string("scheme.power_mode", fallback == PowerMode::PC ? "pc" : "nonpc");
  if (name == "pc") return PowerMode::PC;
  if (name == "nonpc") return PowerMode::NonPC;
  throw error(errc::validation,
              "config key 'scheme.power_mode': expected 'pc' or 'nonpc', got '" + name + "'");
}

std::vector<RadarTarget> parse_targets(const std::string& text) {
  std::vector<RadarTarget> targets;
  for (const std::string& item : split_list("radar.targets", text)) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw error(errc::validation,
                  "config key 'radar.targets': expected 'range:velocity', got '" + item + "'");
    RadarTarget t;
    t.range_m = parse_double("radar.targets", item.substr(0, colon));
    t.velocity_mps = parse_double("radar.targets", item.substr(colon + 1));
    if (t.range_m < 0.0)
      throw error(errc::validation, "config key 'radar.targets': range must be nonnegative");
    targets.push_back(t);
  }
  return targets;
}

}  // namespace isac
