#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace nlrad {

/// Fixed formatting for every emitted number: 17 significant digits, so
/// identical runs give byte-identical files.
std::string format_double(double value);

/// Minimal CSV emitter with a fixed header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  /// Mixed rows: cells already formatted by the caller.
  void raw_row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Two-column "x y" plot data, one pair per line.
void write_plot_data(std::ostream& out, const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nlrad
