#include "dhc/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "dhc/errors.hpp"

namespace dhc {

namespace {
constexpr double kProbFloor = 1e-30;
}

LossConfig LossConfig::resolved(int depth) const {
  if (depth < 1) throw std::invalid_argument("loss: depth must be >= 1");
  LossConfig out = *this;
  if (out.alpha.size() == 1 && depth > 1) out.alpha.assign(depth, out.alpha[0]);
  if (out.alpha.empty()) out.alpha.assign(depth, 1.0);
  if (static_cast<int>(out.alpha.size()) != depth)
    throw std::invalid_argument("loss: alpha must have one entry (broadcast) or one per layer");
  const int pairs = depth - 1;
  if (out.beta.size() == 1 && pairs != 1) out.beta.assign(pairs, out.beta[0]);
  if (out.beta.empty()) out.beta.assign(pairs, 0.25);
  if (static_cast<int>(out.beta.size()) != pairs)
    throw std::invalid_argument("loss: beta must have one entry (broadcast) or one per layer pair");
  for (double a : out.alpha)
    if (a < 0.0 || a > 1.0) throw std::invalid_argument("loss: alpha weights must be in [0, 1]");
  for (double b : out.beta)
    if (b < 0.0 || b > 1.0) throw std::invalid_argument("loss: beta weights must be in [0, 1]");
  if (out.ploss_mode == PlossMode::kConstant && out.ploss_constant <= 1.0)
    throw std::invalid_argument("loss: constant penalty base must be > 1");
  return out;
}

double cross_entropy(std::span<const double> dist, int label) {
  if (label < 0 || label >= static_cast<int>(dist.size()))
    throw std::invalid_argument("cross_entropy: label out of range");
  const double p = dist[label] > kProbFloor ? dist[label] : kProbFloor;
  return -std::log(p);
}

std::vector<double> cross_entropy_logit_grad(std::span<const double> dist, int label) {
  if (label < 0 || label >= static_cast<int>(dist.size()))
    throw std::invalid_argument("cross_entropy_logit_grad: label out of range");
  std::vector<double> g(dist.begin(), dist.end());
  g[label] -= 1.0;
  return g;
}

int predicted_class(std::span<const double> dist) {
  if (dist.empty()) throw std::invalid_argument("predicted_class: empty distribution");
  int best = 0;
  for (int i = 1; i < static_cast<int>(dist.size()); ++i)
    if (dist[i] > dist[best]) best = i;
  return best;
}

void indicators(const CategoryTree& tree, const std::vector<int>& pred, const std::vector<int>& gold,
                std::vector<uint8_t>* violation, std::vector<uint8_t>* incorrect) {
  const int depth = tree.depth();
  if (static_cast<int>(pred.size()) != depth || static_cast<int>(gold.size()) != depth)
    throw std::invalid_argument("indicators: expected one prediction and one gold class per layer");
  incorrect->resize(depth);
  violation->resize(depth - 1);
  for (int l = 1; l <= depth; ++l) (*incorrect)[l - 1] = pred[l - 1] != gold[l - 1] ? 1 : 0;
  for (int l = 2; l <= depth; ++l) {
    const NodeId& parent = tree.node_at(l - 1, pred[l - 2]);
    const NodeId& child = tree.node_at(l, pred[l - 1]);
    (*violation)[l - 2] = tree.is_child(parent, child) ? 0 : 1;
  }
}

DependenceLoss dependence_loss(double loss_prev, double loss_cur, uint8_t violation_cur, uint8_t incorrect_prev,
                               uint8_t incorrect_cur, const LossConfig& cfg) {
  if (loss_prev < 0.0 || loss_cur < 0.0) throw std::invalid_argument("dependence_loss: layer losses must be >= 0");
  if (violation_cur > 1 || incorrect_prev > 1 || incorrect_cur > 1)
    throw std::invalid_argument("dependence_loss: indicators must be 0 or 1");
  const double e_prev = static_cast<double>(violation_cur) * incorrect_prev;
  const double e_cur = static_cast<double>(violation_cur) * incorrect_cur;
  DependenceLoss out;
  if (cfg.ploss_mode == PlossMode::kConstant) {
    if (cfg.ploss_constant <= 1.0) throw std::invalid_argument("dependence_loss: constant penalty base must be > 1");
    out.value = std::pow(cfg.ploss_constant, e_prev) * std::pow(cfg.ploss_constant, e_cur) - 1.0;
    // Piecewise constant in the layer losses.
  } else {
    // (e^loss_prev)^e_prev * (e^loss_cur)^e_cur - 1, with the exponents in
    // {0, 1} acting as gates.
    const double expo = std::exp(e_prev * loss_prev + e_cur * loss_cur);
    out.value = expo - 1.0;
    out.grad_prev = e_prev * expo;
    out.grad_cur = e_cur * expo;
  }
  return out;
}

double total_loss(std::span<const double> layer_losses, std::span<const double> dependence_losses,
                  const LossConfig& cfg) {
  if (layer_losses.size() != cfg.alpha.size())
    throw std::invalid_argument("total_loss: layer loss count does not match alpha weights");
  if (dependence_losses.size() != cfg.beta.size())
    throw std::invalid_argument("total_loss: dependence loss count does not match beta weights");
  double acc = 0.0;
  for (size_t i = 0; i < layer_losses.size(); ++i) acc += cfg.alpha[i] * layer_losses[i];
  for (size_t i = 0; i < dependence_losses.size(); ++i) acc += cfg.beta[i] * dependence_losses[i];
  return acc;
}

LossResult hierarchical_loss(const std::vector<Matrix>& dists, const std::vector<std::vector<int>>& gold,
                             const CategoryTree& tree, const LossConfig& cfg_in,
                             const FrozenIndicators* frozen) {
  const int depth = tree.depth();
  if (static_cast<int>(dists.size()) != depth)
    throw std::invalid_argument("hierarchical_loss: expected one distribution matrix per layer");
  const int batch = dists[0].rows;
  if (batch < 1) throw std::invalid_argument("hierarchical_loss: empty batch");
  for (int l = 1; l <= depth; ++l) {
    if (dists[l - 1].rows != batch) throw std::invalid_argument("hierarchical_loss: batch size mismatch");
    if (dists[l - 1].cols != tree.class_count(l))
      throw std::invalid_argument("hierarchical_loss: distribution width does not match layer class count");
  }
  if (static_cast<int>(gold.size()) != batch)
    throw std::invalid_argument("hierarchical_loss: gold count does not match batch");

  const LossConfig cfg = cfg_in.resolved(depth);
  const int pairs = depth - 1;

  LossResult res;
  LossReport& rep = res.report;
  rep.layer_loss.assign(batch, std::vector<double>(depth, 0.0));
  rep.dependence_loss.assign(batch, std::vector<double>(pairs, 0.0));
  rep.incorrect.assign(batch, {});
  rep.violation.assign(batch, {});
  rep.sample_total.assign(batch, 0.0);
  rep.mean_layer_loss.assign(depth, 0.0);
  rep.mean_dependence_loss.assign(pairs, 0.0);
  res.predictions.assign(batch, std::vector<int>(depth, 0));
  res.logit_grads.clear();
  for (int l = 1; l <= depth; ++l) res.logit_grads.emplace_back(batch, tree.class_count(l));

  const double inv_batch = 1.0 / batch;
  for (int s = 0; s < batch; ++s) {
    auto& pred = res.predictions[s];
    for (int l = 1; l <= depth; ++l) pred[l - 1] = predicted_class(dists[l - 1].row(s));
    if (frozen) {
      rep.violation[s] = frozen->violation.at(s);
      rep.incorrect[s] = frozen->incorrect.at(s);
    } else {
      indicators(tree, pred, gold[s], &rep.violation[s], &rep.incorrect[s]);
    }

    auto& ll = rep.layer_loss[s];
    for (int l = 1; l <= depth; ++l) ll[l - 1] = cross_entropy(dists[l - 1].row(s), gold[s][l - 1]);

    // Gradient of the sample objective with respect to each layer loss:
    // alpha, plus the two dependence terms the layer participates in.
    std::vector<double> coeff(cfg.alpha);
    auto& dl = rep.dependence_loss[s];
    for (int p = 0; p < pairs; ++p) {
      DependenceLoss d = dependence_loss(ll[p], ll[p + 1], rep.violation[s][p], rep.incorrect[s][p],
                                         rep.incorrect[s][p + 1], cfg);
      dl[p] = d.value;
      coeff[p] += cfg.beta[p] * d.grad_prev;
      coeff[p + 1] += cfg.beta[p] * d.grad_cur;
    }
    rep.sample_total[s] = total_loss(ll, dl, cfg);

    for (int l = 1; l <= depth; ++l) {
      const double scale = coeff[l - 1] * inv_batch;
      auto row = dists[l - 1].row(s);
      double* grow = res.logit_grads[l - 1].row_ptr(s);
      for (int j = 0; j < static_cast<int>(row.size()); ++j) grow[j] = scale * row[j];
      grow[gold[s][l - 1]] -= scale;
    }
  }

  for (int s = 0; s < batch; ++s) {
    for (int l = 0; l < depth; ++l) rep.mean_layer_loss[l] += rep.layer_loss[s][l];
    for (int p = 0; p < pairs; ++p) rep.mean_dependence_loss[p] += rep.dependence_loss[s][p];
    rep.total += rep.sample_total[s];
  }
  for (int l = 0; l < depth; ++l) rep.mean_layer_loss[l] *= inv_batch;
  for (int p = 0; p < pairs; ++p) rep.mean_dependence_loss[p] *= inv_batch;
  rep.total *= inv_batch;
  return res;
}

}  // namespace dhc
