#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace jnforce {

// Machine-readable scan output with a stable schema: fixed column order,
// floats serialized with 17 significant digits via std::to_chars (round-trip
// exact, locale independent), '\n' line endings.  The same rows serialize to
// CSV or to a JSON document with a metadata object.
class Table {
 public:
  using Cell = std::variant<double, long, std::string>;

  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  void set_metadata(const std::string& key, const std::string& value);

  std::string to_csv() const;
  std::string to_json() const;

  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

// 17-significant-digit shortest-general formatting used in every table.
std::string format_double(double v);

// FNV-1a 64-bit over raw bytes, hex encoded; identifies config files in
// output metadata.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace jnforce
