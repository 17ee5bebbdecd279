#include "weakpca/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace weakpca {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

bool parse_cell(const std::string& cell, double& out) {
  const char* begin = cell.c_str();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  if (begin == end) return false;
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

Matrix read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "' for reading");

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    std::vector<double> row(cells.size());
    bool ok = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_cell(cells[c], row[c])) {
        ok = false;
        bad_col = c + 1;
        break;
      }
    }
    if (!ok) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw DomainError("non-numeric cell at row " + std::to_string(lineno) + ", column " +
                        std::to_string(bad_col) + " of '" + path + "'");
    }
    header_allowed = false;
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw DomainError("row " + std::to_string(lineno) + " of '" + path + "' has " +
                        std::to_string(row.size()) + " columns, expected " +
                        std::to_string(width));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("'" + path + "' contains no numeric rows");

  Matrix m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return m;
}

void write_csv_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open '" + path + "' for writing");
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (j) out << ',';
    out << 'x' << (j + 1);
  }
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw DomainError("failed writing '" + path + "'");
}

}  // namespace weakpca
