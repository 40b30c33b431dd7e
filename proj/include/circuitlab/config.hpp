#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace circuitlab {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` config with `#` comments. Lists are comma separated;
/// numeric lists also accept the range form `start : stop : step`
/// (inclusive). Unknown keys are rejected against the experiment's schema.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  long get_int(const std::string& key, std::optional<long> def = {}) const;
  std::uint64_t get_u64(const std::string& key,
                        std::optional<std::uint64_t> def = {}) const;
  double get_double(const std::string& key, std::optional<double> def = {}) const;
  bool get_bool(const std::string& key, std::optional<bool> def = {}) const;
  std::string get_string(const std::string& key,
                         std::optional<std::string> def = {}) const;
  std::vector<long> get_int_list(const std::string& key,
                                 std::optional<std::vector<long>> def = {}) const;
  std::vector<double> get_double_list(
      const std::string& key, std::optional<std::vector<double>> def = {}) const;

  /// Throws config_error when a key outside `known` is present.
  void check_known_keys(std::span<const std::string> known) const;

  const std::string& raw_text() const { return raw_; }
  /// FNV-1a of the raw config bytes, as fixed-width hex.
  std::string hash_hex() const;

  const std::map<std::string, std::string>& entries() const { return values_; }
  void set(const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::string> values_;
  std::string raw_;
};

}  // namespace circuitlab
