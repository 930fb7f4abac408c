#pragma once

#include <string>
#include <vector>

namespace rir {

// Scientific notation, 9 significant digits: the fixed on-disk format.
std::string format_sig9(double v);

// Header line plus rows; all columns must have equal length.
std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& columns);

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  // column index by header name; -1 when absent
  int column_index(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv_file(const std::string& path);

}  // namespace rir
