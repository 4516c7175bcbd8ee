#pragma once

#include <string>
#include <vector>

#include "dhc/hierarchy.hpp"
#include "dhc/matrix.hpp"
#include "dhc/nn.hpp"
#include "dhc/params.hpp"
#include "dhc/rng.hpp"

namespace dhc {

enum class ShareMode {
  kHierarchical,  // layer representation = concat of its own and all shallower projections
  kIndependent,   // layer representation = its own projection only
};

struct ModelConfig {
  int input_dim = 4096;
  std::vector<int> base_hidden_dims = {256};
  int root_dim = 128;
  std::vector<int> layer_dims = {64};  // broadcast to every layer when a single entry
  ShareMode share_mode = ShareMode::kHierarchical;
  bool use_bias = true;

  // Validates and broadcasts layer_dims to one entry per layer.
  ModelConfig resolved(int depth) const;
};

// Everything cached by one forward pass, reused by backward.
struct ForwardTrace {
  Matrix input;
  std::vector<Matrix> base_pre;  // pre-activation per hidden layer
  std::vector<Matrix> base_act;  // post-relu per hidden layer
  Matrix root;                   // output of the base network
  std::vector<Matrix> indep;     // per-layer projection of root
  std::vector<Matrix> shared;    // per-layer representation fed to the head
  std::vector<Matrix> logits;    // per-layer pre-softmax scores
  std::vector<Matrix> dists;     // per-layer class distributions
};

// The hierarchical classifier: an MLP base producing a root representation,
// one linear projection per taxonomy layer, shared representations built by
// concatenating the projections of all layers above, and one softmax head per
// layer. The backward pass is hand-derived; the one non-obvious path is the
// concatenation fan-out, where the gradient reaching a projection sums the
// contributions of every deeper layer's head.
class DhcModel {
 public:
  DhcModel(const CategoryTree& tree, const ModelConfig& config, Rng& rng);

  int depth() const { return depth_; }
  const std::vector<int>& class_counts() const { return class_counts_; }
  const ModelConfig& config() const { return cfg_; }

  // Width of the layer representation fed to head `layer` (1-based).
  int rep_width(int layer) const;

  Matrix base_forward(const Matrix& x, ForwardTrace* trace) const;
  void project_forward(ForwardTrace* trace) const;  // root -> indep -> shared
  void heads_forward(ForwardTrace* trace) const;    // shared -> logits -> dists
  ForwardTrace forward(const Matrix& x) const;

  // Accumulates exact gradients of all parameters into the grad buffers.
  // logit_grads holds d(objective)/d(logits) per layer, shaped like logits.
  void backward(const ForwardTrace& trace, const std::vector<Matrix>& logit_grads);

  ParameterSet& params() { return params_; }
  const ParameterSet& params() const { return params_; }

 private:
  const Matrix* bias_or_null(const std::string& name) const;

  ModelConfig cfg_;
  int depth_ = 0;
  std::vector<int> class_counts_;
  ParameterSet params_;
};

}  // namespace dhc
