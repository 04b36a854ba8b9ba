#include "cwom/io/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cwom {

CsvWriter::CsvWriter(const std::string& path, std::vector<CsvColumn> columns)
    : out_(path), width_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot write '" + path + "'");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << (i ? "," : "") << columns[i].name;
    if (!columns[i].unit.empty()) out_ << " [" << columns[i].unit << "]";
  }
  out_ << "\n";
}

std::string CsvWriter::cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(cell(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::invalid_argument("CsvWriter: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
  if (!out_) throw std::runtime_error("CsvWriter: write failed");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) out.push_back(c);
    return out;
  };
  CsvTable t;
  std::string line;
  if (std::getline(in, line)) t.header = split(line);
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split(line));
  return t;
}

}  // namespace cwom
