// Single-threaded reference kernels. Same contracts and the same per-element
// accumulation order as dhc::kernels; no pragmas, no loop reshaping.

#include <cmath>

#include "dhc/errors.hpp"
#include "dhc/kernels.hpp"

namespace dhc::serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions differ");
  Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (int k = 0; k < a.cols; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows) throw std::invalid_argument("matmul_at_b: row counts differ");
  Matrix out(a.cols, b.cols);
  for (int i = 0; i < a.cols; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (int k = 0; k < a.rows; ++k) acc += a(k, i) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
  if (a.cols != b.cols) throw std::invalid_argument("matmul_a_bt: column counts differ");
  Matrix out(a.rows, b.rows);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.rows; ++j) {
      double acc = 0.0;
      for (int k = 0; k < a.cols; ++k) acc += a(i, k) * b(j, k);
      out(i, j) = acc;
    }
  }
  return out;
}

void add_bias_rows(Matrix& m, const Matrix& bias) {
  if (bias.rows != 1 || bias.cols != m.cols) throw std::invalid_argument("add_bias_rows: bias shape");
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) += bias.data[j];
}

Matrix column_sums(const Matrix& m) {
  Matrix out(1, m.cols);
  for (int j = 0; j < m.cols; ++j) {
    double acc = 0.0;
    for (int i = 0; i < m.rows; ++i) acc += m(i, j);
    out.data[j] = acc;
  }
  return out;
}

Matrix relu(const Matrix& x) {
  Matrix out(x.rows, x.cols);
  for (size_t i = 0; i < x.data.size(); ++i) out.data[i] = x.data[i] > 0.0 ? x.data[i] : 0.0;
  return out;
}

Matrix relu_backward(const Matrix& x, const Matrix& upstream) {
  check_same_shape(x, upstream, "relu_backward");
  Matrix out(x.rows, x.cols);
  for (size_t i = 0; i < x.data.size(); ++i) out.data[i] = x.data[i] > 0.0 ? upstream.data[i] : 0.0;
  return out;
}

Matrix softmax_rows(const Matrix& z) {
  if (z.cols < 1) throw std::invalid_argument("softmax_rows: empty rows");
  if (!all_finite(z)) throw NumericError("softmax_rows: non-finite input");
  Matrix out(z.rows, z.cols);
  for (int i = 0; i < z.rows; ++i) {
    const double* zr = z.row_ptr(i);
    double* orow = out.row_ptr(i);
    double zmax = zr[0];
    for (int j = 1; j < z.cols; ++j) zmax = zr[j] > zmax ? zr[j] : zmax;
    double sum = 0.0;
    for (int j = 0; j < z.cols; ++j) {
      orow[j] = std::exp(zr[j] - zmax);
      sum += orow[j];
    }
    for (int j = 0; j < z.cols; ++j) orow[j] /= sum;
  }
  return out;
}

}  // namespace dhc::serial
