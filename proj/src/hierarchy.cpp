#include "dhc/hierarchy.hpp"

#include <sstream>
#include <string_view>

#include "dhc/errors.hpp"

namespace dhc {

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace

CategoryTree CategoryTree::parse(const std::string& text) {
  CategoryTree tree;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const size_t tab = sv.find('\t');
    if (tab == std::string_view::npos)
      throw DataError("taxonomy line " + std::to_string(lineno) + ": expected node_id<TAB>parent_id");
    const NodeId node(trim(sv.substr(0, tab)));
    const NodeId parent(trim(sv.substr(tab + 1)));
    if (node.empty() || parent.empty())
      throw DataError("taxonomy line " + std::to_string(lineno) + ": empty node or parent id");
    if (tree.info_.count(node))
      throw DataError("taxonomy line " + std::to_string(lineno) + ": duplicate node id '" + node + "'");

    NodeInfo ni;
    if (parent == "ROOT") {
      ni.layer = 1;
    } else {
      auto pit = tree.info_.find(parent);
      if (pit == tree.info_.end())
        throw DataError("taxonomy line " + std::to_string(lineno) + ": parent '" + parent +
                        "' of '" + node + "' is unknown (parents must be declared first)");
      ni.layer = pit->second.layer + 1;
      ni.parent = parent;
      pit->second.children.push_back(node);
    }
    if (static_cast<int>(tree.layers_.size()) < ni.layer) tree.layers_.resize(ni.layer);
    ni.index = static_cast<int>(tree.layers_[ni.layer - 1].size());
    tree.layers_[ni.layer - 1].push_back(node);
    tree.info_.emplace(node, std::move(ni));
  }

  if (tree.layers_.empty()) throw DataError("taxonomy: no nodes");

  // Every node above the leaf layer must have at least one child, i.e. all
  // leaves live in layer L. A node whose parent chain stops short of L means
  // its declared parent was not in the layer immediately preceding the leaf
  // layer it should reach.
  const int depth = tree.depth();
  for (int l = 1; l < depth; ++l) {
    for (const NodeId& n : tree.layers_[l - 1]) {
      if (tree.info_.at(n).children.empty())
        throw DataError("taxonomy: node '" + n + "' in layer " + std::to_string(l) +
                        " has no children, but the tree depth is " + std::to_string(depth) +
                        " (its parent is not in the layer preceding the leaf layer)");
    }
  }
  return tree;
}

const CategoryTree::NodeInfo& CategoryTree::info(const NodeId& node) const {
  auto it = info_.find(node);
  if (it == info_.end()) throw DataError("taxonomy: unknown node '" + node + "'");
  return it->second;
}

int CategoryTree::class_count(int layer) const {
  return static_cast<int>(layer_nodes(layer).size());
}

const std::vector<NodeId>& CategoryTree::layer_nodes(int layer) const {
  if (layer < 1 || layer > depth())
    throw std::invalid_argument("layer " + std::to_string(layer) + " out of range 1.." + std::to_string(depth()));
  return layers_[layer - 1];
}

int CategoryTree::layer_of(const NodeId& node) const { return info(node).layer; }

const std::vector<NodeId>& CategoryTree::children(const NodeId& node) const { return info(node).children; }

const std::string& CategoryTree::display_name(const NodeId& node) const {
  info(node);  // existence check; ids double as display names
  return node;
}

bool CategoryTree::is_child(const NodeId& parent, const NodeId& child) const {
  info(parent);
  return info(child).parent == parent;
}

LabelPath CategoryTree::leaf_to_path(const NodeId& leaf) const {
  const NodeInfo& ni = info(leaf);
  if (ni.layer != depth())
    throw DataError("taxonomy: node '" + leaf + "' is in layer " + std::to_string(ni.layer) +
                    ", not the leaf layer " + std::to_string(depth()));
  LabelPath path(depth());
  NodeId cur = leaf;
  for (int l = depth(); l >= 1; --l) {
    path[l - 1] = cur;
    if (l > 1) cur = info_.at(cur).parent;
  }
  return path;
}

int CategoryTree::class_index(int layer, const NodeId& node) const {
  const NodeInfo& ni = info(node);
  if (ni.layer != layer)
    throw std::invalid_argument("node '" + node + "' is in layer " + std::to_string(ni.layer) +
                                ", not layer " + std::to_string(layer));
  return ni.index;
}

const NodeId& CategoryTree::node_at(int layer, int index) const {
  const auto& nodes = layer_nodes(layer);
  if (index < 0 || index >= static_cast<int>(nodes.size()))
    throw std::invalid_argument("class index " + std::to_string(index) + " out of range in layer " +
                                std::to_string(layer));
  return nodes[index];
}

std::vector<int> CategoryTree::path_to_indices(const LabelPath& path) const {
  if (static_cast<int>(path.size()) != depth())
    throw std::invalid_argument("label path length does not match tree depth");
  std::vector<int> idx(path.size());
  for (int l = 1; l <= depth(); ++l) idx[l - 1] = class_index(l, path[l - 1]);
  return idx;
}

LabelPath CategoryTree::indices_to_path(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != depth())
    throw std::invalid_argument("index path length does not match tree depth");
  LabelPath path(indices.size());
  for (int l = 1; l <= depth(); ++l) path[l - 1] = node_at(l, indices[l - 1]);
  return path;
}

std::string CategoryTree::serialize() const {
  std::string out;
  for (int l = 1; l <= depth(); ++l) {
    for (const NodeId& n : layers_[l - 1]) {
      out += n;
      out += '\t';
      out += (l == 1) ? "ROOT" : info_.at(n).parent;
      out += '\n';
    }
  }
  return out;
}

uint64_t CategoryTree::content_hash() const { return fnv1a64(serialize()); }

}  // namespace dhc
