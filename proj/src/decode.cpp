#include "dhc/decode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dhc/loss.hpp"

namespace dhc {

namespace {

constexpr double kProbFloor = 1e-30;

double log_prob(double p) { return std::log(p > kProbFloor ? p : kProbFloor); }

void check_dists(const CategoryTree& tree, const std::vector<DistRow>& dists) {
  if (static_cast<int>(dists.size()) != tree.depth())
    throw std::invalid_argument("decode: expected one distribution per layer");
  for (int l = 1; l <= tree.depth(); ++l)
    if (static_cast<int>(dists[l - 1].size()) != tree.class_count(l))
      throw std::invalid_argument("decode: distribution width does not match layer class count");
}

DecodedPath finish(const CategoryTree& tree, std::vector<int> classes, const std::vector<DistRow>& dists) {
  DecodedPath out;
  out.classes = std::move(classes);
  out.nodes = tree.indices_to_path(out.classes);
  out.probabilities.resize(out.classes.size());
  out.score = 0.0;
  for (size_t l = 0; l < out.classes.size(); ++l) {
    out.probabilities[l] = dists[l][out.classes[l]];
    out.score += log_prob(out.probabilities[l]);
  }
  return out;
}

}  // namespace

DecodedPath greedy_decode(const CategoryTree& tree, const std::vector<DistRow>& dists) {
  check_dists(tree, dists);
  std::vector<int> classes(tree.depth());
  classes[0] = predicted_class(dists[0]);
  for (int l = 2; l <= tree.depth(); ++l) {
    const NodeId& parent = tree.node_at(l - 1, classes[l - 2]);
    int best = -1;
    double best_p = 0.0;
    // Children are stored in class-index order, so strict > keeps the
    // lowest-index winner on ties.
    for (const NodeId& child : tree.children(parent)) {
      const int idx = tree.class_index(l, child);
      if (best < 0 || dists[l - 1][idx] > best_p) {
        best = idx;
        best_p = dists[l - 1][idx];
      }
    }
    if (best < 0) throw std::invalid_argument("greedy_decode: node '" + parent + "' has no children");
    classes[l - 1] = best;
  }
  return finish(tree, std::move(classes), dists);
}

DecodedPath heuristic_decode(const CategoryTree& tree, const std::vector<DistRow>& dists) {
  check_dists(tree, dists);
  const int depth = tree.depth();
  const int leaf = predicted_class(dists[depth - 1]);
  LabelPath path = tree.leaf_to_path(tree.node_at(depth, leaf));
  return finish(tree, tree.path_to_indices(path), dists);
}

std::vector<DecodedPath> beam_decode(const CategoryTree& tree, const std::vector<DistRow>& dists, int width) {
  if (width < 1) throw std::invalid_argument("beam_decode: width must be >= 1");
  check_dists(tree, dists);

  struct Partial {
    std::vector<int> classes;
    double score = 0.0;
  };
  auto better = [](const Partial& a, const Partial& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.classes < b.classes;
  };

  std::vector<Partial> beam;
  for (int i = 0; i < tree.class_count(1); ++i) beam.push_back({{i}, log_prob(dists[0][i])});
  std::sort(beam.begin(), beam.end(), better);
  if (static_cast<int>(beam.size()) > width) beam.resize(width);

  for (int l = 2; l <= tree.depth(); ++l) {
    std::vector<Partial> next;
    for (const Partial& p : beam) {
      const NodeId& parent = tree.node_at(l - 1, p.classes.back());
      for (const NodeId& child : tree.children(parent)) {
        const int idx = tree.class_index(l, child);
        Partial ext;
        ext.classes = p.classes;
        ext.classes.push_back(idx);
        ext.score = p.score + log_prob(dists[l - 1][idx]);
        next.push_back(std::move(ext));
      }
    }
    std::sort(next.begin(), next.end(), better);
    if (static_cast<int>(next.size()) > width) next.resize(width);
    beam = std::move(next);
  }

  std::vector<DecodedPath> out;
  out.reserve(beam.size());
  for (Partial& p : beam) out.push_back(finish(tree, std::move(p.classes), dists));
  return out;
}

DecodedPath decode(const CategoryTree& tree, const std::vector<DistRow>& dists, DecoderKind kind, int beam_width) {
  switch (kind) {
    case DecoderKind::kGreedy:
      return greedy_decode(tree, dists);
    case DecoderKind::kHeuristic:
      return heuristic_decode(tree, dists);
    case DecoderKind::kBeam:
      return beam_decode(tree, dists, beam_width).front();
  }
  throw std::invalid_argument("decode: unknown decoder");
}

}  // namespace dhc
