#include "rir/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rir/errors.hpp"

namespace rir {

std::string format_sig9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw std::invalid_argument("csv: header/column count mismatch");
  if (columns.empty()) throw std::invalid_argument("csv: no columns");
  const std::size_t rows = columns[0].size();
  for (const auto& col : columns)
    if (col.size() != rows)
      throw std::invalid_argument("csv: ragged columns");

  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out += ',';
    out += header[j];
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out += ',';
      if (!std::isfinite(columns[j][i]))
        throw NumericalError("csv: non-finite value in column " + header[j]);
      out += format_sig9(columns[j][i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("csv: cannot open '" + path + "' for write");
  f << csv_to_string(header, columns);
  if (!f) throw std::runtime_error("csv: write to '" + path + "' failed");
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == name) return static_cast<int>(j);
  return -1;
}

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  CsvTable table;
  std::istringstream hdr(line);
  std::string cell;
  while (std::getline(hdr, cell, ',')) table.header.push_back(cell);
  if (table.header.empty()) throw std::invalid_argument("csv: empty header");
  table.columns.resize(table.header.size());

  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::size_t j = 0;
    while (std::getline(cells, cell, ',')) {
      if (j >= table.columns.size())
        throw std::invalid_argument("csv: row " + std::to_string(row) +
                                    " has too many cells");
      const char* begin = cell.c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin || *end != '\0')
        throw std::invalid_argument("csv: row " + std::to_string(row) +
                                    ": '" + cell + "' is not a number");
      table.columns[j].push_back(v);
      ++j;
    }
    if (j != table.columns.size())
      throw std::invalid_argument("csv: row " + std::to_string(row) +
                                  " has too few cells");
  }
  if (table.columns[0].empty())
    throw std::invalid_argument("csv: no data rows");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("csv: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace rir
