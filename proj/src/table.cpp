#include "jnforce/table.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace jnforce {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("Table: row width does not match the header");
  }
  rows_.push_back(std::move(row));
}

void Table::set_metadata(const std::string& key, const std::string& value) {
  metadata_.emplace_back(key, value);
}

namespace {

std::string cell_text(const Table::Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
  return std::get<std::string>(c);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string cell_json(const Table::Cell& c) {
  if (std::holds_alternative<std::string>(c)) {
    return "\"" + json_escape(std::get<std::string>(c)) + "\"";
  }
  return cell_text(c);
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json() const {
  std::string out = "{\n  \"metadata\": {";
  for (std::size_t i = 0; i < metadata_.size(); ++i) {
    if (i) out += ',';
    out += "\n    \"" + json_escape(metadata_[i].first) + "\": \"" +
           json_escape(metadata_[i].second) + "\"";
  }
  out += metadata_.empty() ? "},\n" : "\n  },\n";
  out += "  \"rows\": [";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r) out += ',';
    out += "\n    {";
    for (std::size_t i = 0; i < rows_[r].size(); ++i) {
      if (i) out += ", ";
      out += "\"" + json_escape(columns_[i]) + "\": " + cell_json(rows_[r][i]);
    }
    out += "}";
  }
  out += rows_.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace jnforce
