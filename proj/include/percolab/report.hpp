#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace percolab {

// Printing style of a column in CSV and pretty output. JSON always carries
// the exact value.
enum class ColumnKind {
  Integer,
  Estimate,  // 4 decimals
  Cardy,     // 10 significant digits
  Real,      // 10 significant digits
  Text,
};

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Real;
};

using Value = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Value>> rows;

  void add_row(std::vector<Value> row);
};

// A command's output: the resolved configuration (including the seed) and
// one or more tables.
struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Table> tables;

  const Table& table(const std::string& name) const;
};

enum class OutputFormat { Csv, Json, Pretty };
OutputFormat parse_output_format(const std::string& name);

std::string format_cell(const Value& cell, ColumnKind kind);

// CSV: '#' comment lines carrying the command and config, then each table
// as a header plus rows; tables are separated by a blank line and a
// "# table: name" line.
void write_csv(const Report& report, std::ostream& out);
nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);
void write_pretty(const Report& report, std::ostream& out);
void write_report(const Report& report, OutputFormat format, std::ostream& out);

}  // namespace percolab
