// Tabular output: RFC-4180 CSV and JSON arrays of objects. Doubles are
// written with shortest round-trip precision so emitted files reparse
// bit-exactly and identical runs produce identical bytes.
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ionrot {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws on schema mismatch
};

enum class TableFormat { Csv, Json };

std::string format_double(double v);

std::string emit_csv(const Table& table);
std::string emit_json(const Table& table);
std::string emit_table(const Table& table, TableFormat format);

// Minimal RFC-4180 reader (quotes, embedded separators/newlines). Returns
// raw string fields; numeric reinterpretation is up to the caller.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace ionrot
