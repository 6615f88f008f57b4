#pragma once

#include "dpnewton/common.hpp"
#include "dpnewton/mop.hpp"

#include <string>

namespace dpn {

/// Round-trip-safe decimal formatting used for every CSV we emit.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Points with header prefix_1..prefix_d.
void write_point_csv(const std::string& path, const std::vector<Vec>& points,
                     const std::string& prefix);
std::vector<Vec> read_point_csv(const std::string& path);

/// Population dump: header x_1..x_n,f_1..f_k.
void write_population_csv(const std::string& path,
                          const std::vector<EvaluatedPoint>& points, int n,
                          int k);

}  // namespace dpn
