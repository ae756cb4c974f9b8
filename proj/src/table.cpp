#include "fewdist/table.hpp"

#include <cstdio>
#include "json.hpp"

#include "fewdist/error.hpp"

namespace fewdist {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

struct CellText {
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(std::uint64_t v) const { return std::to_string(v); }
  std::string operator()(const std::string& v) const { return csv_field(v); }
  std::string operator()(Ratio r) const { return format_ratio(r.value); }
};

struct CellJson {
  nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
  nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  // Round-trips through the CSV text so both formats carry the same value.
  nlohmann::ordered_json operator()(Ratio r) const { return std::stod(format_ratio(r.value)); }
};

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) {
    fail(ErrorKind::integrity, "table row has " + std::to_string(row.size()) +
                                   " cells for " + std::to_string(header.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string format_ratio(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", value);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += std::visit(CellText{}, row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table, bool single_record) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      record[table.header[i]] = std::visit(CellJson{}, row[i]);
    }
    records.push_back(std::move(record));
  }
  if (single_record && records.size() == 1) return records[0].dump(2) + "\n";
  return records.dump(2) + "\n";
}

}  // namespace fewdist
