#include "circuitlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "circuitlab/rng.hpp"

namespace circuitlab {

namespace {
std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::parse(const std::string& text) {
  Config c;
  c.raw_ = text;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("config line " + std::to_string(lineno) +
                                        ": empty key");
    if (c.values_.count(key))
      throw config_error("config: duplicate key `" + key + "`");
    c.values_[key] = value;
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open config file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse(os.str());
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

namespace {
const std::string& require(const std::map<std::string, std::string>& vals,
                           const std::string& key) {
  auto it = vals.find(key);
  if (it == vals.end()) throw config_error("config: missing required key `" + key + "`");
  return it->second;
}
}  // namespace

long Config::get_int(const std::string& key, std::optional<long> def) const {
  if (!has(key)) {
    if (def) return *def;
    require(values_, key);
  }
  const std::string& v = values_.at(key);
  std::size_t pos = 0;
  long out = 0;
  try {
    out = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw config_error("config: key `" + key + "` is not an integer: " + v);
  }
  if (pos != v.size())
    throw config_error("config: key `" + key + "` is not an integer: " + v);
  return out;
}

std::uint64_t Config::get_u64(const std::string& key,
                              std::optional<std::uint64_t> def) const {
  if (!has(key)) {
    if (def) return *def;
    require(values_, key);
  }
  const std::string& v = values_.at(key);
  std::size_t pos = 0;
  std::uint64_t out = 0;
  try {
    out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw config_error("config: key `" + key + "` is not a u64: " + v);
  }
  if (pos != v.size())
    throw config_error("config: key `" + key + "` is not a u64: " + v);
  return out;
}

double Config::get_double(const std::string& key,
                          std::optional<double> def) const {
  if (!has(key)) {
    if (def) return *def;
    require(values_, key);
  }
  const std::string& v = values_.at(key);
  std::size_t pos = 0;
  double out = 0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw config_error("config: key `" + key + "` is not a number: " + v);
  }
  if (pos != v.size())
    throw config_error("config: key `" + key + "` is not a number: " + v);
  return out;
}

bool Config::get_bool(const std::string& key, std::optional<bool> def) const {
  if (!has(key)) {
    if (def) return *def;
    require(values_, key);
  }
  const std::string& v = values_.at(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw config_error("config: key `" + key + "` is not a bool: " + v);
}

std::string Config::get_string(const std::string& key,
                               std::optional<std::string> def) const {
  if (!has(key)) {
    if (def) return *def;
    require(values_, key);
  }
  return values_.at(key);
}

std::vector<double> Config::get_double_list(
    const std::string& key, std::optional<std::vector<double>> def) const {
  if (!has(key)) {
    if (def) return *def;
    require(values_, key);
  }
  const std::string& v = values_.at(key);
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    // range form start : stop : step
    std::istringstream is(v);
    std::string a, b, c;
    if (!std::getline(is, a, ':') || !std::getline(is, b, ':') ||
        !std::getline(is, c))
      throw config_error("config: bad range in `" + key + "`: " + v);
    double lo, hi, step;
    try {
      lo = std::stod(trim(a));
      hi = std::stod(trim(b));
      step = std::stod(trim(c));
    } catch (const std::exception&) {
      throw config_error("config: bad range in `" + key + "`: " + v);
    }
    if (step <= 0 || hi < lo)
      throw config_error("config: bad range in `" + key + "`: " + v);
    for (double x = lo; x <= hi + 1e-9 * step; x += step) out.push_back(x);
    return out;
  }
  std::istringstream is(v);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw config_error("config: bad number in `" + key + "`: " + item);
    }
  }
  if (out.empty()) throw config_error("config: empty list for `" + key + "`");
  return out;
}

std::vector<long> Config::get_int_list(
    const std::string& key, std::optional<std::vector<long>> def) const {
  if (!has(key)) {
    if (def) return *def;
    require(values_, key);
  }
  std::vector<long> out;
  for (double d : get_double_list(key)) {
    const long l = std::lround(d);
    if (std::abs(d - l) > 1e-9)
      throw config_error("config: key `" + key + "` needs integers");
    out.push_back(l);
  }
  return out;
}

void Config::check_known_keys(std::span<const std::string> known) const {
  for (const auto& [k, v] : values_) {
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw config_error("config: unknown key `" + k + "`");
  }
}

std::string Config::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(raw_)));
  return buf;
}

}  // namespace circuitlab
