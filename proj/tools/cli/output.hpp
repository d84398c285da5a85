#pragma once

#include <string>
#include <vector>

namespace lcft::cli {

/// Column-major table; the first column is the abscissa.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  void add_column(std::string name, std::vector<double> values);
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Sorts rows by the abscissa and drops exact duplicates; ConfigError if two
/// rows share an abscissa with different values.
void make_increasing(Table& table);

/// Header row, ',' separators, '.' decimals, 17 significant digits.
std::string to_csv(const Table& table);

/// Line plot of columns 1.. against column 0.
std::string to_svg(const Table& table, const std::string& title);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace lcft::cli
