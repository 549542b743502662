#include "wgflow/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "wgflow/errors.hpp"

namespace wgflow::io {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_table(std::ostream& out, const Table& table) {
  for (const auto& c : table.comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
      table.comments.push_back(line.substr(start));
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) table.header.push_back(cell);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      row.push_back(std::stod(cell, &pos));
    }
    if (row.size() != table.header.size())
      throw invalid_parameter("CSV row width does not match the header");
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw invalid_parameter("CSV has no header line");
  return table;
}

}  // namespace wgflow::io
