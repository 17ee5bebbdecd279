#pragma once

#include <string>

#include "weakpca/linalg.hpp"

namespace weakpca {

// Shortest decimal representation that round-trips to the same double,
// always with '.' as separator (locale independent), so repeated runs hash
// identically.
std::string format_double(double v);

// Parses a numeric CSV into a dense matrix. A single leading non-numeric
// line is treated as a header and skipped. Throws DomainError with 1-based
// row/column diagnostics on malformed cells or ragged rows.
Matrix read_csv_matrix(const std::string& path);

// Writes an n x p matrix with header x1,...,xp and a trailing newline.
void write_csv_matrix(const std::string& path, const Matrix& m);

}  // namespace weakpca
