#include "peerscore/matrix.hpp"

#include <string>

#include "peerscore/error.hpp"

namespace peerscore {

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw DimensionError("ragged matrix: row " + std::to_string(r) +
                           " has " + std::to_string(rows[r].size()) +
                           " columns");
    }
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto values = row(r);
    out[r].assign(values.begin(), values.end());
  }
  return out;
}

Matrix Multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("cannot multiply " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " by " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      out(i, j) = sum;
    }
  }
  return out;
}

}  // namespace peerscore
