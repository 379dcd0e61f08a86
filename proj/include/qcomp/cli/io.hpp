#pragma once

#include <string>
#include <vector>

#include "qcomp/sweep.hpp"

/// CSV (17 significant digits, one header row) and plain PGM output.
namespace qcomp::cli {

/// Columns of equal length under a header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

std::string format_number(double v);

void write_csv(const std::string& path, const Table& table);
Table read_csv(const std::string& path);

/// Rows "axis1,axis2,metric" in row-major order.
Table grid_table(const SweepGrid& grid);
void write_grid_csv(const std::string& path, const SweepGrid& grid);
SweepGrid read_grid_csv(const std::string& path);

inline constexpr double kPgmFloor = 1e-8;
inline constexpr double kPgmCeiling = 1.0;

/// 0..255 gray level for a metric value: log10 scale between the floor
/// (white, 255) and the ceiling (black, 0). NaN maps to black.
int gray_level(double value);

/// Plain P2 graymap: row i is axis1[i], column j is axis2[j].
void write_pgm(const std::string& path, const SweepGrid& grid);

}  // namespace qcomp::cli
