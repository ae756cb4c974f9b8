#pragma once

// Flat tables rendered as CSV (canonical) or JSON (same fields, same order).
// Integers print exactly; ratio cells print with 6 significant digits.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fewdist {

struct Ratio {
  double value = 0.0;
};

using Cell = std::variant<std::int64_t, std::uint64_t, std::string, Ratio>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string format_ratio(double value);

std::string to_csv(const Table& table);

// An array of objects, or a single object when `single_record` is set.
std::string to_json(const Table& table, bool single_record = false);

}  // namespace fewdist
