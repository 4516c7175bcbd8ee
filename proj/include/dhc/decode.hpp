#pragma once

#include <span>
#include <vector>

#include "dhc/hierarchy.hpp"

namespace dhc {

// A hierarchy-consistent root-to-leaf prediction. score is the sum of
// per-layer log probabilities (each floored at 1e-30), so it is always <= 0.
struct DecodedPath {
  std::vector<int> classes;           // per-layer class index
  LabelPath nodes;                    // per-layer node id
  std::vector<double> probabilities;  // probability read at each chosen class
  double score = 0.0;
};

enum class DecoderKind { kGreedy, kHeuristic, kBeam };

using DistRow = std::span<const double>;

// Top-down: pick the best layer-1 class, then at each deeper layer the best
// class among the children of the previous choice. Ties go to the lowest
// class index.
DecodedPath greedy_decode(const CategoryTree& tree, const std::vector<DistRow>& dists);

// Bottom-up: pick the best leaf, then read its unique ancestor chain.
DecodedPath heuristic_decode(const CategoryTree& tree, const std::vector<DistRow>& dists);

// Standard beam over layers, extending kept paths only through children and
// ranking by joint log probability (ties by lexicographic class order).
// Returns the final beam, best first. With width >= the leaf count this is
// exhaustive and the first entry is the global optimum.
std::vector<DecodedPath> beam_decode(const CategoryTree& tree, const std::vector<DistRow>& dists, int width);

// Dispatch helper; beam returns its best path.
DecodedPath decode(const CategoryTree& tree, const std::vector<DistRow>& dists, DecoderKind kind, int beam_width);

}  // namespace dhc
