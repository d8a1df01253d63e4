#pragma once

#include <cstddef>
#include <vector>

namespace catknock {

// Minimal dense row-major matrix, sized for desk-scale designs.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Matrix identity(std::size_t n);
};

Matrix matmul(const Matrix& A, const Matrix& B);
Matrix transpose(const Matrix& A);

struct SymEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j is the eigenvector of values[j]
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix.
SymEigen sym_eigen(const Matrix& A, int max_sweeps = 64);

double sym_min_eigenvalue(const Matrix& A);

}  // namespace catknock
