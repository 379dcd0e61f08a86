#include "qcomp/cli/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcomp::cli {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> parts;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) parts.push_back(field);
  if (!line.empty() && line.back() == ',') parts.emplace_back();
  return parts;
}

double parse_cell(const std::string& s, const std::string& path) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw std::runtime_error(path + ": bad number '" + s + "'");
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const Table& table) {
  if (table.columns.size() != table.header.size())
    throw std::invalid_argument("write_csv: header/column count mismatch");
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  for (const auto& c : table.columns)
    if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");

  std::string text;
  for (std::size_t j = 0; j < table.header.size(); ++j) text += (j ? "," : "") + table.header[j];
  text += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      if (j) text += ',';
      text += format_number(table.columns[j][i]);
    }
    text += '\n';
  }
  auto out = open_for_write(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  t.header = split(line);
  t.columns.resize(t.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) throw std::runtime_error(path + ": ragged row");
    for (std::size_t j = 0; j < cells.size(); ++j) t.columns[j].push_back(parse_cell(cells[j], path));
  }
  return t;
}

Table grid_table(const SweepGrid& grid) {
  Table t{{grid.axis1_name, grid.axis2_name, grid.metric_name}, {{}, {}, {}}};
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      t.columns[0].push_back(grid.axis1_values[i]);
      t.columns[1].push_back(grid.axis2_values[j]);
      t.columns[2].push_back(grid(i, j));
    }
  }
  return t;
}

void write_grid_csv(const std::string& path, const SweepGrid& grid) {
  write_csv(path, grid_table(grid));
}

SweepGrid read_grid_csv(const std::string& path) {
  const Table t = read_csv(path);
  if (t.header.size() != 3) throw std::runtime_error(path + ": expected 3 columns");
  SweepGrid g;
  g.axis1_name = t.header[0];
  g.axis2_name = t.header[1];
  g.metric_name = t.header[2];
  const auto& a1 = t.columns[0];
  const auto& a2 = t.columns[1];
  // Row-major: axis2 cycles fastest, so its length is the run before axis1 changes.
  std::size_t cols = 0;
  while (cols < a1.size() && a1[cols] == a1[0]) ++cols;
  if (cols == 0 || a1.size() % cols != 0) throw std::runtime_error(path + ": not a full grid");
  const std::size_t rows = a1.size() / cols;
  g.axis2_values.assign(a2.begin(), a2.begin() + static_cast<std::ptrdiff_t>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    g.axis1_values.push_back(a1[i * cols]);
    for (std::size_t j = 0; j < cols; ++j) {
      if (a1[i * cols + j] != g.axis1_values.back() || a2[i * cols + j] != g.axis2_values[j])
        throw std::runtime_error(path + ": not a full grid");
    }
  }
  g.cells = t.columns[2];
  return g;
}

int gray_level(double value) {
  if (std::isnan(value)) return 0;
  const double lf = std::log10(kPgmFloor), lc = std::log10(kPgmCeiling);
  const double lv = value <= kPgmFloor ? lf : std::min(std::log10(value), lc);
  return static_cast<int>(std::lround(255.0 * (lc - lv) / (lc - lf)));
}

void write_pgm(const std::string& path, const SweepGrid& grid) {
  std::string text = "P2\n# " + grid.metric_name + ", log10 scale, floor " +
                     format_number(kPgmFloor) + " (white), ceiling " +
                     format_number(kPgmCeiling) + " (black); rows " + grid.axis1_name +
                     ", columns " + grid.axis2_name + "\n";
  text += std::to_string(grid.cols()) + " " + std::to_string(grid.rows()) + "\n255\n";
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      if (j) text += ' ';
      text += std::to_string(gray_level(grid(i, j)));
    }
    text += '\n';
  }
  auto out = open_for_write(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace qcomp::cli
