#pragma once

#include <functional>
#include <vector>

#include "dhc/matrix.hpp"
#include "dhc/params.hpp"

namespace dhc {

// out = x * w (+ bias broadcast over rows). bias may be null.
Matrix dense_forward(const Matrix& x, const Matrix& w, const Matrix* bias);

struct DenseGrads {
  Matrix grad_x;  // upstream * w^T
  Matrix grad_w;  // x^T * upstream
  Matrix grad_b;  // column sums of upstream, 1 x out
};

DenseGrads dense_backward(const Matrix& x, const Matrix& w, const Matrix& upstream);

// Concatenate along columns; all parts share the row count.
Matrix hconcat(const std::vector<const Matrix*>& parts);

// Slice back into blocks of the given widths (sum must equal m.cols).
std::vector<Matrix> hsplit(const Matrix& m, const std::vector<int>& widths);

// Central finite differences of f over every parameter coordinate:
// (f(p + eps) - f(p - eps)) / (2 eps). f is evaluated with the parameter
// values mutated in place and must not cache state between calls. Returns one
// gradient matrix per parameter, in insertion order.
std::vector<Matrix> finite_difference_grad(ParameterSet& params, const std::function<double()>& f, double eps);

}  // namespace dhc
