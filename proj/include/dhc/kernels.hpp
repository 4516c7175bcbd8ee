#pragma once

#include "dhc/matrix.hpp"

// Dense compute kernels. dhc::kernels is the production path, parallelized
// with OpenMP over output rows; dhc::serial is a plain single-threaded
// implementation of the same contracts, kept as the reference the tests and
// the benchmark compare against.
//
// Every output element is accumulated by one thread in ascending inner index,
// so kernels:: results are bitwise reproducible for any thread count and
// bitwise equal to serial:: on the same platform.

namespace dhc::kernels {

// a[m x k] * b[k x n] -> [m x n]
Matrix matmul(const Matrix& a, const Matrix& b);

// a[m x k]^T * b[m x n] -> [k x n]
Matrix matmul_at_b(const Matrix& a, const Matrix& b);

// a[m x n] * b[k x n]^T -> [m x k]
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);

// m[i, j] += bias[0, j]; bias is 1 x cols.
void add_bias_rows(Matrix& m, const Matrix& bias);

// Sum over rows -> 1 x cols.
Matrix column_sums(const Matrix& m);

Matrix relu(const Matrix& x);

// upstream where x > 0, zero where x <= 0.
Matrix relu_backward(const Matrix& x, const Matrix& upstream);

// Row-wise stable softmax: p_i = exp(z_i - max_j z_j) / sum. Throws
// NumericError on non-finite input.
Matrix softmax_rows(const Matrix& z);

}  // namespace dhc::kernels

namespace dhc::serial {

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_at_b(const Matrix& a, const Matrix& b);
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);
void add_bias_rows(Matrix& m, const Matrix& bias);
Matrix column_sums(const Matrix& m);
Matrix relu(const Matrix& x);
Matrix relu_backward(const Matrix& x, const Matrix& upstream);
Matrix softmax_rows(const Matrix& z);

}  // namespace dhc::serial
