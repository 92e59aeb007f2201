#include "percolab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "percolab/errors.hpp"

namespace percolab {

void Table::add_row(std::vector<Value> row) {
  if (row.size() != columns.size()) throw ContractError("row width does not match the columns of " + name);
  rows.push_back(std::move(row));
}

const Table& Report::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw ContractError("report has no table '" + name + "'");
}

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "pretty") return OutputFormat::Pretty;
  throw DomainError("unknown output format '" + name + "' (csv, json or pretty)");
}

namespace {

std::string format_double(double v, ColumnKind kind) {
  char buf[64];
  switch (kind) {
    case ColumnKind::Estimate:
      std::snprintf(buf, sizeof buf, "%.4f", v);
      break;
    case ColumnKind::Cardy:
    case ColumnKind::Real:
      if (v == 0.0) return "0";
      std::snprintf(buf, sizeof buf, "%#.10g", v);
      break;
    case ColumnKind::Integer:
      std::snprintf(buf, sizeof buf, "%.0f", v);
      break;
    case ColumnKind::Text:
      std::snprintf(buf, sizeof buf, "%.17g", v);
      break;
  }
  return buf;
}

const char* kind_name(ColumnKind k) {
  switch (k) {
    case ColumnKind::Integer:
      return "integer";
    case ColumnKind::Estimate:
      return "estimate";
    case ColumnKind::Cardy:
      return "cardy";
    case ColumnKind::Real:
      return "real";
    case ColumnKind::Text:
      return "text";
  }
  return "real";
}

ColumnKind kind_from_name(const std::string& s) {
  for (auto k : {ColumnKind::Integer, ColumnKind::Estimate, ColumnKind::Cardy, ColumnKind::Real, ColumnKind::Text})
    if (s == kind_name(k)) return k;
  throw DomainError("unknown column kind '" + s + "'");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Value& cell, ColumnKind kind) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d, kind);
  return std::get<std::string>(cell);
}

void write_csv(const Report& report, std::ostream& out) {
  out << "# command: " << report.command << "\n";
  out << "# config: " << report.config.dump() << "\n";
  bool first = true;
  for (const auto& t : report.tables) {
    if (!first) out << "\n";
    first = false;
    out << "# table: " << t.name << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << csv_escape(t.columns[c].name);
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out << (c ? "," : "") << csv_escape(format_cell(row[c], t.columns[c].kind));
      out << "\n";
    }
  }
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json j;
  j["command"] = report.command;
  j["config"] = report.config;
  j["tables"] = nlohmann::json::array();
  for (const auto& t : report.tables) {
    nlohmann::json jt;
    jt["name"] = t.name;
    jt["columns"] = nlohmann::json::array();
    for (const auto& c : t.columns) jt["columns"].push_back({{"name", c.name}, {"kind", kind_name(c.kind)}});
    jt["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json jr = nlohmann::json::array();
      for (const auto& cell : row) std::visit([&](const auto& v) { jr.push_back(v); }, cell);
      jt["rows"].push_back(std::move(jr));
    }
    j["tables"].push_back(std::move(jt));
  }
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  for (const auto& jt : j.at("tables")) {
    Table t;
    t.name = jt.at("name").get<std::string>();
    for (const auto& c : jt.at("columns"))
      t.columns.push_back({c.at("name").get<std::string>(), kind_from_name(c.at("kind").get<std::string>())});
    for (const auto& jr : jt.at("rows")) {
      std::vector<Value> row;
      for (const auto& v : jr) {
        if (v.is_number_integer()) {
          row.emplace_back(v.get<std::int64_t>());
        } else if (v.is_number()) {
          row.emplace_back(v.get<double>());
        } else {
          row.emplace_back(v.get<std::string>());
        }
      }
      t.rows.push_back(std::move(row));
    }
    r.tables.push_back(std::move(t));
  }
  return r;
}

void write_pretty(const Report& report, std::ostream& out) {
  bool first = true;
  for (const auto& t : report.tables) {
    if (!first) out << "\n";
    first = false;
    if (report.tables.size() > 1) out << t.name << "\n";
    std::vector<std::size_t> width(t.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].name.size();
    for (const auto& row : t.rows) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line.push_back(format_cell(row[c], t.columns[c].kind));
        width[c] = std::max(width[c], line.back().size());
      }
      text.push_back(std::move(line));
    }
    auto emit = [&](auto get) {
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const std::string s = get(c);
        out << (c ? "  " : "") << std::string(width[c] - s.size(), ' ') << s;
      }
      out << "\n";
    };
    emit([&](std::size_t c) { return t.columns[c].name; });
    for (const auto& line : text) emit([&](std::size_t c) { return line[c]; });
  }
}

void write_report(const Report& report, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Csv:
      write_csv(report, out);
      break;
    case OutputFormat::Json:
      out << to_json(report).dump(2) << "\n";
      break;
    case OutputFormat::Pretty:
      write_pretty(report, out);
      break;
  }
}

}  // namespace percolab
