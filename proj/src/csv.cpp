#include "relchirp/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace relchirp {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

namespace {

void append_metadata(std::ostringstream& out,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
  for (const auto& [key, value] : meta) {
    // multi-line values (the config echo) stay parseable as comments
    std::istringstream lines(value);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
      out << "# " << (first ? key + ": " : "    ") << line << "\n";
      first = false;
    }
  }
}

void append_header(std::ostringstream& out, const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ",";
    out << cols[i];
  }
  out << "\n";
}

}  // namespace

std::string to_csv(const SpectrumTable& table) {
  std::ostringstream out;
  append_metadata(out, table.metadata);
  append_header(out, table.columns);
  for (const SpectrumRow& r : table.rows) {
    out << format_double(r.k) << "," << format_double(r.k_over_k0) << ","
        << format_double(r.abs_s) << "," << format_double(r.abs_s_normalized)
        << "," << format_double(r.re_s) << "," << format_double(r.im_s) << ","
        << r.method << "\n";
  }
  return out.str();
}

std::string to_csv(const KinematicsTable& table) {
  std::ostringstream out;
  append_metadata(out, table.metadata);
  append_header(out, table.columns);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_double(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace relchirp
