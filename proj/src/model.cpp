#include "dhc/model.hpp"

#include <stdexcept>

#include "dhc/kernels.hpp"

namespace dhc {

ModelConfig ModelConfig::resolved(int depth) const {
  if (depth < 1) throw std::invalid_argument("model: tree depth must be >= 1");
  if (input_dim < 1 || root_dim < 1) throw std::invalid_argument("model: dimensions must be >= 1");
  for (int d : base_hidden_dims)
    if (d < 1) throw std::invalid_argument("model: hidden dimensions must be >= 1");
  ModelConfig out = *this;
  if (out.layer_dims.size() == 1 && depth > 1) out.layer_dims.assign(depth, out.layer_dims[0]);
  if (static_cast<int>(out.layer_dims.size()) != depth)
    throw std::invalid_argument("model: layer_dims must have one entry (broadcast) or one per layer");
  for (int d : out.layer_dims)
    if (d < 1) throw std::invalid_argument("model: layer dimensions must be >= 1");
  return out;
}

// Parameter creation doubles as the seeded draw order: base layers first
// (input to root), then the per-layer projections, then the heads, weights
// drawn row-major, biases zero and drawing nothing.
DhcModel::DhcModel(const CategoryTree& tree, const ModelConfig& config, Rng& rng)
    : cfg_(config.resolved(tree.depth())), depth_(tree.depth()) {
  class_counts_.resize(depth_);
  for (int l = 1; l <= depth_; ++l) class_counts_[l - 1] = tree.class_count(l);

  int prev = cfg_.input_dim;
  for (size_t i = 0; i < cfg_.base_hidden_dims.size(); ++i) {
    const int width = cfg_.base_hidden_dims[i];
    init_uniform_scaled(params_.add("base.w" + std::to_string(i), prev, width), rng);
    if (cfg_.use_bias) params_.add("base.b" + std::to_string(i), 1, width);
    prev = width;
  }
  init_uniform_scaled(params_.add("base.w_out", prev, cfg_.root_dim), rng);
  if (cfg_.use_bias) params_.add("base.b_out", 1, cfg_.root_dim);

  for (int l = 1; l <= depth_; ++l) {
    init_uniform_scaled(params_.add("proj.w" + std::to_string(l), cfg_.root_dim, cfg_.layer_dims[l - 1]), rng);
    if (cfg_.use_bias) params_.add("proj.b" + std::to_string(l), 1, cfg_.layer_dims[l - 1]);
  }
  for (int l = 1; l <= depth_; ++l) {
    init_uniform_scaled(params_.add("head.w" + std::to_string(l), rep_width(l), class_counts_[l - 1]), rng);
    if (cfg_.use_bias) params_.add("head.b" + std::to_string(l), 1, class_counts_[l - 1]);
  }
}

int DhcModel::rep_width(int layer) const {
  if (layer < 1 || layer > depth_) throw std::invalid_argument("rep_width: layer out of range");
  if (cfg_.share_mode == ShareMode::kIndependent) return cfg_.layer_dims[layer - 1];
  int w = 0;
  for (int l = 1; l <= layer; ++l) w += cfg_.layer_dims[l - 1];
  return w;
}

const Matrix* DhcModel::bias_or_null(const std::string& name) const {
  return cfg_.use_bias ? &params_.get(name).value : nullptr;
}

Matrix DhcModel::base_forward(const Matrix& x, ForwardTrace* trace) const {
  if (x.cols != cfg_.input_dim) throw std::invalid_argument("base_forward: input width mismatch");
  if (trace) trace->input = x;
  Matrix cur = x;
  for (size_t i = 0; i < cfg_.base_hidden_dims.size(); ++i) {
    Matrix pre = dense_forward(cur, params_.get("base.w" + std::to_string(i)).value,
                               bias_or_null("base.b" + std::to_string(i)));
    Matrix act = kernels::relu(pre);
    if (trace) {
      trace->base_pre.push_back(pre);
      trace->base_act.push_back(act);
    }
    cur = std::move(act);
  }
  Matrix root = dense_forward(cur, params_.get("base.w_out").value, bias_or_null("base.b_out"));
  if (trace) trace->root = root;
  return root;
}

void DhcModel::project_forward(ForwardTrace* trace) const {
  trace->indep.clear();
  trace->shared.clear();
  for (int l = 1; l <= depth_; ++l) {
    Matrix indep = dense_forward(trace->root, params_.get("proj.w" + std::to_string(l)).value,
                                 bias_or_null("proj.b" + std::to_string(l)));
    if (cfg_.share_mode == ShareMode::kHierarchical && l > 1) {
      trace->shared.push_back(hconcat({&trace->shared[l - 2], &indep}));
    } else {
      trace->shared.push_back(indep);
    }
    trace->indep.push_back(std::move(indep));
  }
}

void DhcModel::heads_forward(ForwardTrace* trace) const {
  trace->logits.clear();
  trace->dists.clear();
  for (int l = 1; l <= depth_; ++l) {
    Matrix logits = dense_forward(trace->shared[l - 1], params_.get("head.w" + std::to_string(l)).value,
                                  bias_or_null("head.b" + std::to_string(l)));
    trace->dists.push_back(kernels::softmax_rows(logits));
    trace->logits.push_back(std::move(logits));
  }
}

ForwardTrace DhcModel::forward(const Matrix& x) const {
  ForwardTrace trace;
  base_forward(x, &trace);
  project_forward(&trace);
  heads_forward(&trace);
  return trace;
}

void DhcModel::backward(const ForwardTrace& trace, const std::vector<Matrix>& logit_grads) {
  if (static_cast<int>(logit_grads.size()) != depth_)
    throw std::invalid_argument("backward: expected one logit gradient per layer");
  if (trace.logits.empty() || trace.logits[0].rows != trace.input.rows)
    throw std::invalid_argument("backward: trace is incomplete or stale");
  for (int l = 1; l <= depth_; ++l)
    check_same_shape(logit_grads[l - 1], trace.logits[l - 1], "backward: logit gradient");

  // Heads.
  std::vector<Matrix> grad_shared(depth_);
  for (int l = depth_; l >= 1; --l) {
    auto& w = params_.get("head.w" + std::to_string(l));
    DenseGrads g = dense_backward(trace.shared[l - 1], w.value, logit_grads[l - 1]);
    add_inplace(w.grad, g.grad_w);
    if (cfg_.use_bias) add_inplace(params_.get("head.b" + std::to_string(l)).grad, g.grad_b);
    grad_shared[l - 1] = std::move(g.grad_x);
  }

  // Concatenation fan-out: the gradient of a shared representation splits
  // into a block for the previous shared representation and a block for this
  // layer's own projection. Deeper layers are finished first so that each
  // grad_shared[l] is complete before it is split.
  std::vector<Matrix> grad_indep(depth_);
  if (cfg_.share_mode == ShareMode::kHierarchical) {
    for (int l = depth_; l >= 2; --l) {
      auto parts = hsplit(grad_shared[l - 1], {rep_width(l - 1), cfg_.layer_dims[l - 1]});
      add_inplace(grad_shared[l - 2], parts[0]);
      grad_indep[l - 1] = std::move(parts[1]);
    }
    grad_indep[0] = std::move(grad_shared[0]);
  } else {
    grad_indep = std::move(grad_shared);
  }

  // Projections, summing the root gradient in ascending layer order.
  Matrix grad_root(trace.root.rows, trace.root.cols);
  for (int l = 1; l <= depth_; ++l) {
    auto& w = params_.get("proj.w" + std::to_string(l));
    DenseGrads g = dense_backward(trace.root, w.value, grad_indep[l - 1]);
    add_inplace(w.grad, g.grad_w);
    if (cfg_.use_bias) add_inplace(params_.get("proj.b" + std::to_string(l)).grad, g.grad_b);
    add_inplace(grad_root, g.grad_x);
  }

  // Base network.
  const int hidden = static_cast<int>(cfg_.base_hidden_dims.size());
  const Matrix& last_act = hidden > 0 ? trace.base_act[hidden - 1] : trace.input;
  {
    auto& w = params_.get("base.w_out");
    DenseGrads g = dense_backward(last_act, w.value, grad_root);
    add_inplace(w.grad, g.grad_w);
    if (cfg_.use_bias) add_inplace(params_.get("base.b_out").grad, g.grad_b);
    grad_root = std::move(g.grad_x);
  }
  for (int i = hidden - 1; i >= 0; --i) {
    Matrix grad_pre = kernels::relu_backward(trace.base_pre[i], grad_root);
    const Matrix& input = i > 0 ? trace.base_act[i - 1] : trace.input;
    auto& w = params_.get("base.w" + std::to_string(i));
    DenseGrads g = dense_backward(input, w.value, grad_pre);
    add_inplace(w.grad, g.grad_w);
    if (cfg_.use_bias) add_inplace(params_.get("base.b" + std::to_string(i)).grad, g.grad_b);
    grad_root = std::move(g.grad_x);
  }
}

}  // namespace dhc
