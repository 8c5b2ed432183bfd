#pragma once

#include "svardag/model.hpp"

#include <string>

namespace svardag {

/// Comma-separated numeric matrix. A single leading header row is tolerated
/// and skipped. Parse failures throw std::runtime_error carrying
/// "path:line: message".
Matrix read_csv_matrix(const std::string& path);

/// Writes with full round-trip precision, LF line endings, no header.
void write_csv_matrix(const std::string& path, const Matrix& m);

/// Time-series files hold one row per time step (t rows, n columns).
TimeSeries read_time_series(const std::string& path);
void write_time_series(const std::string& path, const TimeSeries& series);

}  // namespace svardag
