#pragma once

#include <string>
#include <vector>

#include "catknock/linalg.hpp"
#include "catknock/suff_stats.hpp"

namespace catknock {

// Comma-separated, header row, UTF-8; integer codes for categorical columns,
// decimal floats elsewhere.  Parse errors report the 1-based row/column.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
};

CsvTable read_csv(const std::string& path);

// Matrix of category codes in {0,...,m}; every column must be integral.
CategoricalMatrix read_codes_csv(const std::string& path, int m);

Matrix read_matrix_csv(const std::string& path);

// Single numeric column (first column of the file).
std::vector<double> read_column_csv(const std::string& path);

// p code columns followed by one numeric response column.
struct Dataset {
  CategoricalMatrix X;
  std::vector<double> y;
  std::vector<std::string> column_names;  // covariate names, response excluded
};
Dataset read_dataset_csv(const std::string& path, int m);

void write_codes_csv(const std::string& path, const CategoricalMatrix& X,
                     const std::vector<std::string>& names = {});
void write_matrix_csv(const std::string& path, const Matrix& X,
                      const std::vector<std::string>& names = {});
void write_column_csv(const std::string& path, const std::vector<double>& y,
                      const std::string& name = "y");

}  // namespace catknock
