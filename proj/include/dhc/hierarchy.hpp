#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace dhc {

using NodeId = std::string;

// One node id per layer, root-to-leaf. Adjacent entries are parent and child.
using LabelPath = std::vector<NodeId>;

// A layered taxonomy: every node in layer l > 1 has exactly one parent in
// layer l - 1, every node above the leaf layer has at least one child, and
// all leaves sit in the deepest layer. The synthetic root is implicit; it is
// never a class. Immutable after construction, safe for concurrent reads.
//
// Within each layer, class indices follow first-appearance order in the
// source file, which makes them stable across runs for the same file.
class CategoryTree {
 public:
  // Parses the taxonomy format: one "node_id<TAB>parent_id" per line,
  // parent_id "ROOT" for layer-1 nodes, '#' comment lines ignored. A node's
  // layer is its parent's layer plus one, so parents must be declared before
  // their children. Throws DataError on malformed input or a tree that
  // violates the layering invariants.
  static CategoryTree parse(const std::string& text);

  int depth() const { return static_cast<int>(layers_.size()); }

  // layer is 1-based throughout.
  int class_count(int layer) const;
  const std::vector<NodeId>& layer_nodes(int layer) const;
  const std::vector<NodeId>& leaves() const { return layer_nodes(depth()); }

  bool contains(const NodeId& node) const { return info_.count(node) > 0; }
  int layer_of(const NodeId& node) const;
  const std::vector<NodeId>& children(const NodeId& node) const;
  const std::string& display_name(const NodeId& node) const;

  // True iff parent is the recorded parent of child. Throws on unknown ids;
  // returns false for layer-1 children (their parent is the synthetic root).
  bool is_child(const NodeId& parent, const NodeId& child) const;

  // The unique root-to-leaf path ending at leaf. leaf must be in layer L.
  LabelPath leaf_to_path(const NodeId& leaf) const;

  // 0-based position of node within its layer's class list.
  int class_index(int layer, const NodeId& node) const;
  const NodeId& node_at(int layer, int index) const;

  // Converts a root-to-leaf path to per-layer class indices and back.
  std::vector<int> path_to_indices(const LabelPath& path) const;
  LabelPath indices_to_path(const std::vector<int>& indices) const;

  // Emits the taxonomy format, nodes grouped by layer in class-index order.
  // parse(serialize()) reconstructs an identical tree.
  std::string serialize() const;

  // FNV-1a over serialize(); used to match checkpoints against taxonomies.
  uint64_t content_hash() const;

 private:
  struct NodeInfo {
    int layer = 0;        // 1-based
    int index = 0;        // class index within the layer
    NodeId parent;        // empty for layer-1 nodes
    std::vector<NodeId> children;
  };

  const NodeInfo& info(const NodeId& node) const;

  std::vector<std::vector<NodeId>> layers_;
  std::unordered_map<NodeId, NodeInfo> info_;
};

inline CategoryTree load_taxonomy(const std::string& text) { return CategoryTree::parse(text); }

uint64_t fnv1a64(std::string_view bytes);

}  // namespace dhc
