#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctqw::cli {

// fixed formatting: 9 significant digits, '.' decimal separator
inline std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      if (row.size() != header.size()) throw std::logic_error("csv row width mismatch");
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_float(row[i]);
      }
      out += '\n';
    }
    return out;
  }
};

inline void write_csv(const CsvTable& table, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
  out << table.to_csv();
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace ctqw::cli
