#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phc {

/// Shortest text that reads back to the same double.
std::string format_double(double value);

/// Writes one comma-separated row followed by '\n'.
void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);
void write_csv_row(std::ostream& os, const std::vector<double>& values);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws Error when absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

/// Plain CSV without quoting: first line is the header. Throws Error on ragged rows.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

}  // namespace phc
