#ifndef WGFLOW_IO_HPP
#define WGFLOW_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wgflow::io {

/// 17 significant digits, '.' separator, locale-independent.
std::string format_number(double value);

/// A CSV table: '#'-prefixed comment lines, one header line, numeric rows.
struct Table {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_table(std::ostream& out, const Table& table);
Table read_table(std::istream& in);

}  // namespace wgflow::io

#endif
