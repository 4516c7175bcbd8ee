#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dhc/hierarchy.hpp"
#include "dhc/matrix.hpp"

namespace dhc {

enum class PlossMode {
  kConstant,  // penalty base is a fixed constant > 1; carries no gradient
  kError,     // penalty base is exp(layer loss); feeds gradient back into the layer losses
};

struct LossConfig {
  std::vector<double> alpha;  // one weight per layer, each in [0, 1]
  std::vector<double> beta;   // one weight per layer pair (layers 2..L), each in [0, 1]
  PlossMode ploss_mode = PlossMode::kError;
  double ploss_constant = 2.0;

  // Broadcasts single-entry alpha/beta and checks ranges. depth >= 1.
  LossConfig resolved(int depth) const;
};

// Per-sample and batch-mean pieces of one loss evaluation. Indicator layout:
// incorrect[s][l-1] for layers 1..L, violation[s][l-2] for layers 2..L.
struct LossReport {
  std::vector<std::vector<double>> layer_loss;       // [sample][layer]
  std::vector<std::vector<double>> dependence_loss;  // [sample][layer pair]
  std::vector<std::vector<uint8_t>> incorrect;       // [sample][layer]
  std::vector<std::vector<uint8_t>> violation;       // [sample][layer pair]
  std::vector<double> sample_total;                  // per-sample objective
  std::vector<double> mean_layer_loss;               // [layer]
  std::vector<double> mean_dependence_loss;          // [layer pair]
  double total = 0.0;                                // batch-mean objective
};

// Cross-entropy of one distribution row against the gold class, with the
// probability floored at 1e-30 inside the log.
double cross_entropy(std::span<const double> dist, int label);

// d(cross_entropy)/d(logits) = dist - onehot(label).
std::vector<double> cross_entropy_logit_grad(std::span<const double> dist, int label);

// Argmax with ties broken toward the lowest index.
int predicted_class(std::span<const double> dist);

// Fills the error indicators (prediction != gold, per layer) and the
// structure-violation indicators (consecutive predictions not parent-child).
void indicators(const CategoryTree& tree, const std::vector<int>& pred, const std::vector<int>& gold,
                std::vector<uint8_t>* violation, std::vector<uint8_t>* incorrect);

struct DependenceLoss {
  double value = 0.0;
  double grad_prev = 0.0;  // d value / d layer_loss_prev
  double grad_cur = 0.0;   // d value / d layer_loss_cur
};

// Penalty for a structure violation between two consecutive layers, gated by
// the per-layer error indicators. Zero whenever violation = 0. In kError mode
// the penalty is exp(v*i_prev*loss_prev + v*i_cur*loss_cur) - 1 and is
// differentiable in the two layer losses; indicators are always treated as
// constants.
DependenceLoss dependence_loss(double loss_prev, double loss_cur, uint8_t violation_cur, uint8_t incorrect_prev,
                               uint8_t incorrect_cur, const LossConfig& cfg);

// Per-sample weighted objective. Layer terms are summed first, dependence
// terms second, both in ascending layer order, so that all-zero beta yields
// bitwise the plain weighted cross-entropy sum.
double total_loss(std::span<const double> layer_losses, std::span<const double> dependence_losses,
                  const LossConfig& cfg);

// Indicators captured from one forward pass so that a perturbed re-evaluation
// (finite differences) sees the same gating.
struct FrozenIndicators {
  std::vector<std::vector<uint8_t>> violation;
  std::vector<std::vector<uint8_t>> incorrect;
};

struct LossResult {
  LossReport report;
  std::vector<std::vector<int>> predictions;  // unconstrained per-layer argmax, [sample][layer]
  std::vector<Matrix> logit_grads;            // d(batch-mean objective)/d(logits), per layer
};

// Full evaluation of the objective over one minibatch: per-layer argmax,
// indicators, layer and dependence losses, totals, and the logit gradients
// feeding DhcModel::backward. gold holds per-layer class indices per sample.
LossResult hierarchical_loss(const std::vector<Matrix>& dists, const std::vector<std::vector<int>>& gold,
                             const CategoryTree& tree, const LossConfig& cfg,
                             const FrozenIndicators* frozen = nullptr);

}  // namespace dhc
