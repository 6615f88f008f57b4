#include "dpnewton/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dpn {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error("'" + path + "': empty file");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error("'" + path + "' line " + std::to_string(lineno) +
                    ": bad number '" + cell + "'");
      }
    }
    if (row.size() != table.header.size())
      throw Error("'" + path + "' line " + std::to_string(lineno) +
                  ": expected " + std::to_string(table.header.size()) +
                  " columns, got " + std::to_string(row.size()));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  for (size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

void write_point_csv(const std::string& path, const std::vector<Vec>& points,
                     const std::string& prefix) {
  const int d = points.empty() ? 0 : static_cast<int>(points[0].size());
  std::vector<std::string> header;
  for (int i = 1; i <= d; ++i) header.push_back(prefix + "_" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  rows.reserve(points.size());
  for (const Vec& p : points) rows.push_back(to_std(p));
  write_csv(path, header, rows);
}

std::vector<Vec> read_point_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  std::vector<Vec> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back(to_vec(row));
  return out;
}

void write_population_csv(const std::string& path,
                          const std::vector<EvaluatedPoint>& points, int n,
                          int k) {
  std::vector<std::string> header;
  for (int i = 1; i <= n; ++i) header.push_back("x_" + std::to_string(i));
  for (int i = 1; i <= k; ++i) header.push_back("f_" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  rows.reserve(points.size());
  for (const EvaluatedPoint& ep : points) {
    std::vector<double> row = to_std(ep.x);
    for (int i = 0; i < k; ++i) row.push_back(ep.fx[i]);
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace dpn
