#include "svardag/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace svardag {

namespace {

[[noreturn]] void fail(const std::string& path, long line, const std::string& message) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + message);
}

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  size_t begin = 0;
  while (true) {
    size_t end = line.find(',', begin);
    const size_t stop = end == std::string::npos ? line.size() : end;
    size_t first = begin;
    size_t last = stop;
    while (first < last && (line[first] == ' ' || line[first] == '\t')) ++first;
    while (last > first && (line[last - 1] == ' ' || line[last - 1] == '\t' || line[last - 1] == '\r')) --last;
    double value = 0.0;
    const auto res = std::from_chars(line.data() + first, line.data() + last, value);
    if (res.ec != std::errc() || res.ptr != line.data() + last || first == last) {
      return false;
    }
    out.push_back(value);
    if (end == std::string::npos) {
      return true;
    }
    begin = end + 1;
  }
}

}  // namespace

Matrix read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  size_t cols = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) {
      continue;
    }
    std::vector<double> row;
    if (!parse_row(line, row)) {
      if (header_allowed) {
        header_allowed = false;  // single header row skipped
        continue;
      }
      fail(path, lineno, "non-numeric cell");
    }
    header_allowed = false;
    if (rows.empty()) {
      cols = row.size();
    } else if (row.size() != cols) {
      std::ostringstream msg;
      msg << "expected " << cols << " columns, got " << row.size();
      fail(path, lineno, msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    fail(path, lineno, "no data rows");
  }
  Matrix m(static_cast<long>(rows.size()), static_cast<long>(cols));
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
  }
  return m;
}

void write_csv_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open file for writing: " + path);
  }
  char buffer[64];
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", m(i, j));
      out << buffer;
      if (j + 1 < m.cols()) {
        out << ',';
      }
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

TimeSeries read_time_series(const std::string& path) {
  return TimeSeries(read_csv_matrix(path).transpose());
}

void write_time_series(const std::string& path, const TimeSeries& series) {
  write_csv_matrix(path, series.x.transpose());
}

}  // namespace svardag
