#include "ncs/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace ncs {

Edge make_edge(NodeId u, NodeId v) {
  if (u == v) throw std::invalid_argument("self loop: " + std::to_string(u));
  if (u < 0 || v < 0) throw std::invalid_argument("negative node id");
  return u < v ? Edge{u, v} : Edge{v, u};
}

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

NcsGraph::NcsGraph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 0) throw std::invalid_argument("negative node count");
  for (auto& e : edges_) {
    e = make_edge(e.a, e.b);
    if (e.b >= node_count_)
      throw std::invalid_argument("edge endpoint out of range: " + to_string(e));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");
}

bool NcsGraph::has_edge(NodeId u, NodeId v) const {
  if (u == v) return false;
  Edge e = make_edge(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

int NcsGraph::degree(NodeId v) const {
  if (v < 0 || v >= node_count_) throw std::invalid_argument("node out of range");
  int d = 0;
  for (const auto& e : edges_)
    if (e.a == v || e.b == v) ++d;
  return d;
}

int NcsGraph::min_degree() const {
  if (node_count_ == 0) return 0;
  std::vector<int> deg(node_count_, 0);
  for (const auto& e : edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return *std::min_element(deg.begin(), deg.end());
}

std::vector<std::vector<NodeId>> NcsGraph::adjacency() const {
  std::vector<std::vector<NodeId>> adj(node_count_);
  for (const auto& e : edges_) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

NcsGraph NcsGraph::complete(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs >= 1 node");
  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) edges.push_back({a, b});
  return NcsGraph(n, std::move(edges));
}

NcsGraph NcsGraph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs >= 3 nodes");
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
  return NcsGraph(n, std::move(edges));
}

NcsGraph NcsGraph::star(int n) {
  if (n < 2) throw std::invalid_argument("star needs >= 2 nodes");
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({0, v});
  return NcsGraph(n, std::move(edges));
}

NcsGraph NcsGraph::path(int n) {
  if (n < 1) throw std::invalid_argument("path needs >= 1 node");
  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return NcsGraph(n, std::move(edges));
}

namespace {

std::vector<bool> reach_from_zero(const NcsGraph& g, const std::vector<Edge>& skipped) {
  std::vector<bool> skip_edge(g.edge_count(), false);
  const auto& edges = g.edges();
  for (const auto& r : skipped) {
    auto it = std::lower_bound(edges.begin(), edges.end(), r);
    if (it == edges.end() || *it != r)
      throw std::invalid_argument("removed edge not in graph: " + to_string(r));
    skip_edge[it - edges.begin()] = true;
  }
  std::vector<std::vector<std::pair<NodeId, int>>> adj(g.node_count());
  for (int i = 0; i < g.edge_count(); ++i) {
    adj[edges[i].a].push_back({edges[i].b, i});
    adj[edges[i].b].push_back({edges[i].a, i});
  }
  std::vector<bool> seen(g.node_count(), false);
  std::queue<NodeId> q;
  seen[0] = true;
  q.push(0);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (auto [v, idx] : adj[u]) {
      if (skip_edge[idx] || seen[v]) continue;
      seen[v] = true;
      q.push(v);
    }
  }
  return seen;
}

// Unit-capacity undirected max flow. Each undirected edge is one arc pair
// (2i: a->b, 2i+1: b->a), both starting at capacity 1 and each acting as the
// other's residual, so opposite pushes cancel and net use stays <= 1.
struct FlowNet {
  int n = 0;
  std::vector<NodeId> arc_to;
  std::vector<int> arc_cap;
  std::vector<std::vector<int>> out;   // per node, arcs sorted by target id

  explicit FlowNet(const NcsGraph& g) : n(g.node_count()), out(g.node_count()) {
    const auto& edges = g.edges();
    arc_to.reserve(edges.size() * 2);
    arc_cap.assign(edges.size() * 2, 1);
    for (const auto& e : edges) {
      arc_to.push_back(e.b);
      arc_to.push_back(e.a);
    }
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      out[edges[i].a].push_back(2 * i);
      out[edges[i].b].push_back(2 * i + 1);
    }
    for (auto& arcs : out)
      std::sort(arcs.begin(), arcs.end(), [&](int x, int y) {
        return arc_to[x] != arc_to[y] ? arc_to[x] < arc_to[y] : x < y;
      });
  }

  bool augment(NodeId s, NodeId t) {
    std::vector<int> parent_arc(n, -1);
    std::vector<bool> seen(n, false);
    std::queue<NodeId> q;
    seen[s] = true;
    q.push(s);
    while (!q.empty() && !seen[t]) {
      NodeId u = q.front();
      q.pop();
      for (int a : out[u]) {
        NodeId v = arc_to[a];
        if (seen[v] || arc_cap[a] == 0) continue;
        seen[v] = true;
        parent_arc[v] = a;
        q.push(v);
      }
    }
    if (!seen[t]) return false;
    for (NodeId v = t; v != s;) {
      int a = parent_arc[v];
      arc_cap[a] -= 1;
      arc_cap[a ^ 1] += 1;
      v = arc_to[a ^ 1];
    }
    return true;
  }

  int max_flow(NodeId s, NodeId t) {
    int flow = 0;
    while (augment(s, t)) ++flow;
    return flow;
  }

  // +1 = a->b, -1 = b->a, 0 = unused.
  int net_flow(int edge_idx) const { return 1 - arc_cap[2 * edge_idx]; }

  std::vector<bool> residual_reachable(NodeId s) const {
    std::vector<bool> seen(n, false);
    std::queue<NodeId> q;
    seen[s] = true;
    q.push(s);
    while (!q.empty()) {
      NodeId u = q.front();
      q.pop();
      for (int a : out[u]) {
        NodeId v = arc_to[a];
        if (seen[v] || arc_cap[a] == 0) continue;
        seen[v] = true;
        q.push(v);
      }
    }
    return seen;
  }
};

void check_pair(const NcsGraph& g, NodeId s, NodeId t) {
  if (s < 0 || s >= g.node_count() || t < 0 || t >= g.node_count())
    throw std::invalid_argument("node out of range");
  if (s == t) throw std::invalid_argument("s and t must differ");
}

}  // namespace

bool is_connected(const NcsGraph& g) {
  if (g.node_count() < 1) throw std::invalid_argument("empty graph");
  if (g.node_count() == 1) return true;
  auto seen = reach_from_zero(g, {});
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool is_connected_after_removal(const NcsGraph& g, const std::vector<Edge>& removed) {
  if (g.node_count() < 1) throw std::invalid_argument("empty graph");
  std::vector<Edge> r = removed;
  std::sort(r.begin(), r.end());
  if (std::adjacent_find(r.begin(), r.end()) != r.end())
    throw std::invalid_argument("duplicate edge in removal set");
  if (g.node_count() == 1) return true;
  auto seen = reach_from_zero(g, r);
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

DisjointPaths max_edge_disjoint_paths(const NcsGraph& g, NodeId s, NodeId t) {
  check_pair(g, s, t);
  FlowNet net(g);
  int z = net.max_flow(s, t);

  // Flow decomposition: walk used arcs from s, always taking the smallest
  // target; conservation guarantees every walk ends at t. Loop-erase revisits
  // so reported paths are simple (the erased arcs stay consumed).
  const auto& edges = g.edges();
  std::vector<std::vector<int>> used(g.node_count());   // arc idx per tail node
  for (int i = 0; i < g.edge_count(); ++i) {
    int f = net.net_flow(i);
    if (f == 1) used[edges[i].a].push_back(2 * i);
    if (f == -1) used[edges[i].b].push_back(2 * i + 1);
  }
  for (auto& arcs : used)
    std::sort(arcs.begin(), arcs.end(), [&](int x, int y) {
      return net.arc_to[x] != net.arc_to[y] ? net.arc_to[x] < net.arc_to[y] : x < y;
    });
  std::vector<std::size_t> cursor(g.node_count(), 0);

  DisjointPaths result;
  result.count = z;
  for (int p = 0; p < z; ++p) {
    Path path{s};
    std::vector<int> at(g.node_count(), -1);   // node -> index in path
    at[s] = 0;
    NodeId u = s;
    while (u != t) {
      int a = used[u][cursor[u]++];
      NodeId v = net.arc_to[a];
      if (at[v] >= 0) {
        for (std::size_t i = at[v] + 1; i < path.size(); ++i) at[path[i]] = -1;
        path.resize(at[v] + 1);
      } else {
        path.push_back(v);
        at[v] = static_cast<int>(path.size()) - 1;
      }
      u = v;
    }
    result.paths.push_back(std::move(path));
  }
  return result;
}

std::vector<Edge> min_edge_cut(const NcsGraph& g, NodeId s, NodeId t) {
  check_pair(g, s, t);
  FlowNet net(g);
  net.max_flow(s, t);
  auto side = net.residual_reachable(s);
  std::vector<Edge> cut;
  for (const auto& e : g.edges())
    if (side[e.a] != side[e.b]) cut.push_back(e);
  return cut;
}

int edge_connectivity(const NcsGraph& g) {
  return edge_connectivity_witness(g).lambda;
}

ConnectivityWitness edge_connectivity_witness(const NcsGraph& g) {
  if (g.node_count() < 2) throw std::invalid_argument("edge connectivity needs >= 2 nodes");
  ConnectivityWitness best;
  best.lambda = -1;
  for (NodeId t = 1; t < g.node_count(); ++t) {
    FlowNet net(g);
    int flow = net.max_flow(0, t);
    if (best.lambda >= 0 && flow >= best.lambda) continue;
    auto side = net.residual_reachable(0);
    best.lambda = flow;
    best.cut.clear();
    for (const auto& e : g.edges())
      if (side[e.a] != side[e.b]) best.cut.push_back(e);
    if (best.lambda == 0) break;
  }
  return best;
}

}  // namespace ncs
