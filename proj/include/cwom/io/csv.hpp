#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace cwom {

struct CsvColumn {
  std::string name;
  std::string unit;  // "" for dimensionless or text
};

/// CSV with a header row "name [unit],...". Numbers are written at full
/// precision.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<CsvColumn> columns);

  void row(const std::vector<double>& values);
  /// Mixed row; numeric cells should come from cell().
  void row(const std::vector<std::string>& cells);
  static std::string cell(double v);

 private:
  std::ofstream out_;
  std::size_t width_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

}  // namespace cwom
