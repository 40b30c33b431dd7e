#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace circuitlab {

/// Column-named table written as CSV. The standard column prefix is
/// x, y, yerr, n_samples, L, p, seed with experiment-specific columns
/// appended. CSV bytes are deterministic: metadata lines carry only
/// reproducible fields (config hash, master seed, version).
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> columns);

  void set_meta(const std::string& key, const std::string& value);
  void add_row(const std::vector<std::string>& cells);

  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string to_csv() const;
  /// Atomic write: temp file in the same directory, then rename.
  void write_csv(const std::string& path) const;

  // Canonical cell formatting.
  static std::string fmt(double v);
  static std::string fmt(long v);
  static std::string fmt(std::uint64_t v);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::map<std::string, std::string> meta_;
};

/// Atomic text-file write used for CSV, JSON and SVG outputs.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace circuitlab
