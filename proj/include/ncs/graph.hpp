#pragma once

#include <compare>
#include <string>
#include <vector>

namespace ncs {

// Dense 0-based node ids; node 0 is the sync reference everywhere.
using NodeId = int;

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Canonicalizes endpoint order to a < b; rejects self loops.
Edge make_edge(NodeId u, NodeId v);

std::string to_string(const Edge& e);

// Node sequence from s to t; consecutive entries are adjacent in the graph.
using Path = std::vector<NodeId>;

// Simple undirected graph. Edges are canonical, unique, and kept sorted, so
// row/iteration order is deterministic across the whole library.
class NcsGraph {
 public:
  NcsGraph() = default;
  NcsGraph(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(NodeId u, NodeId v) const;
  int degree(NodeId v) const;
  int min_degree() const;

  // Neighbor lists in ascending id order.
  std::vector<std::vector<NodeId>> adjacency() const;

  static NcsGraph complete(int n);
  static NcsGraph cycle(int n);
  static NcsGraph star(int n);   // node 0 is the hub
  static NcsGraph path(int n);

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
};

bool is_connected(const NcsGraph& g);

// `removed` must be a duplicate-free subset of g's edges.
bool is_connected_after_removal(const NcsGraph& g, const std::vector<Edge>& removed);

struct DisjointPaths {
  int count = 0;             // max-flow value Z
  std::vector<Path> paths;   // exactly `count` pairwise edge-disjoint paths
};

// Maximum set of pairwise edge-disjoint s-t paths, via unit-capacity max flow
// with BFS augmentation. Deterministic: neighbors are explored in ascending
// id order and paths are recovered by smallest-next-node flow decomposition.
DisjointPaths max_edge_disjoint_paths(const NcsGraph& g, NodeId s, NodeId t);

// A minimum s-t edge cut (size equals the max-flow value).
std::vector<Edge> min_edge_cut(const NcsGraph& g, NodeId s, NodeId t);

// Global edge connectivity; 0 when disconnected. Requires >= 2 nodes.
// Computed as min over t != 0 of the (0, t) max flow.
int edge_connectivity(const NcsGraph& g);

struct ConnectivityWitness {
  int lambda = 0;
  std::vector<Edge> cut;   // a minimum cut realizing lambda, sorted
};

ConnectivityWitness edge_connectivity_witness(const NcsGraph& g);

}  // namespace ncs
