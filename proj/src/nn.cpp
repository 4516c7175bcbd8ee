#include "dhc/nn.hpp"

#include <cstring>
#include <stdexcept>

#include "dhc/kernels.hpp"

namespace dhc {

Matrix dense_forward(const Matrix& x, const Matrix& w, const Matrix* bias) {
  Matrix out = kernels::matmul(x, w);
  if (bias) kernels::add_bias_rows(out, *bias);
  return out;
}

DenseGrads dense_backward(const Matrix& x, const Matrix& w, const Matrix& upstream) {
  if (upstream.rows != x.rows || upstream.cols != w.cols)
    throw std::invalid_argument("dense_backward: upstream shape mismatch");
  DenseGrads g;
  g.grad_x = kernels::matmul_a_bt(upstream, w);
  g.grad_w = kernels::matmul_at_b(x, upstream);
  g.grad_b = kernels::column_sums(upstream);
  return g;
}

Matrix hconcat(const std::vector<const Matrix*>& parts) {
  if (parts.empty()) throw std::invalid_argument("hconcat: empty part list");
  const int rows = parts[0]->rows;
  int cols = 0;
  for (const Matrix* p : parts) {
    if (p->rows != rows) throw std::invalid_argument("hconcat: row count mismatch");
    cols += p->cols;
  }
  Matrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    double* dst = out.row_ptr(i);
    for (const Matrix* p : parts) {
      std::memcpy(dst, p->row_ptr(i), sizeof(double) * p->cols);
      dst += p->cols;
    }
  }
  return out;
}

std::vector<Matrix> hsplit(const Matrix& m, const std::vector<int>& widths) {
  int total = 0;
  for (int w : widths) total += w;
  if (total != m.cols) throw std::invalid_argument("hsplit: widths do not sum to column count");
  std::vector<Matrix> parts;
  parts.reserve(widths.size());
  int offset = 0;
  for (int w : widths) {
    Matrix part(m.rows, w);
    for (int i = 0; i < m.rows; ++i)
      std::memcpy(part.row_ptr(i), m.row_ptr(i) + offset, sizeof(double) * w);
    offset += w;
    parts.push_back(std::move(part));
  }
  return parts;
}

std::vector<Matrix> finite_difference_grad(ParameterSet& params, const std::function<double()>& f, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("finite_difference_grad: eps must be > 0");
  std::vector<Matrix> grads;
  grads.reserve(params.all().size());
  for (auto& p : params.all()) {
    Matrix g(p.value.rows, p.value.cols);
    for (size_t i = 0; i < p.value.data.size(); ++i) {
      const double saved = p.value.data[i];
      p.value.data[i] = saved + eps;
      const double fp = f();
      p.value.data[i] = saved - eps;
      const double fm = f();
      p.value.data[i] = saved;
      g.data[i] = (fp - fm) / (2.0 * eps);
    }
    grads.push_back(std::move(g));
  }
  return grads;
}

}  // namespace dhc
