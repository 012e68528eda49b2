#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umtk/matrix.hpp"
#include "umtk/um_core.hpp"

namespace umtk {

// Comma-separated values, '.' decimal point, one optional header row
// (auto-detected: a first row with any non-numeric cell is a header).
// Columns whose first data cell is non-numeric are treated as label columns
// and dropped (e.g. a trailing species name); a non-numeric cell inside a
// numeric column is an error.
struct CsvTable {
    std::vector<std::string> header;        // empty when the file had none
    std::vector<std::size_t> kept_columns;  // original 1-based indices of numeric columns
    Matrix values;
};

CsvTable read_csv_table(const std::string& path);

// Numeric matrix (label columns dropped, see read_csv_table).
Matrix read_matrix_csv(const std::string& path);

// Distance matrix from a full square layout or a lower-triangle layout
// (rows of lengths 1..m: with-diagonal when every row ends in 0, strict
// lower triangle otherwise). Validates the distance-matrix invariants.
DistanceMatrix read_distance_csv(const std::string& path);

// Single column of samples (plain newline-delimited values parse the same way).
std::vector<double> read_series_csv(const std::string& path);

// Writes values at full round-trip precision, optionally with a header row.
void write_matrix_csv(const std::string& path, const Matrix& values,
                      const std::vector<std::string>& header = {});

// Point cloud rows, with an optional trailing integer label column.
void write_cloud_csv(const std::string& path, const Matrix& points,
                     const std::vector<int>& labels = {});

// Formats one double so that reading it back reproduces the exact bits.
std::string format_double(double v);

}  // namespace umtk
