#include "ncs/min_graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ncs/bounds.hpp"
#include "ncs/error.hpp"

namespace ncs {

namespace {

// Lexicographically smallest sorted edge encoding over all node relabelings.
// Brute force; callers keep n small.
std::string canonical_key(int n, const std::vector<Edge>& edges) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::string best;
  std::vector<std::pair<int, int>> mapped(edges.size());
  do {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      int a = perm[edges[i].a], b = perm[edges[i].b];
      mapped[i] = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    std::sort(mapped.begin(), mapped.end());
    std::string key;
    key.reserve(mapped.size() * 2);
    for (const auto& [a, b] : mapped) {
      key.push_back(static_cast<char>(a));
      key.push_back(static_cast<char>(b));
    }
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct Enumerator {
  const std::vector<Edge>& all;
  int n = 0;
  int need = 0;       // minimum surviving degree, 2k+1
  int k = 0;
  int target = 0;     // removal size m
  const MinGraphOptions& opt;

  std::vector<int> degree;
  std::vector<int> chosen;
  long long survivors = 0;
  std::vector<NcsGraph> kept;
  std::set<std::string> classes;

  Enumerator(const std::vector<Edge>& edges, int node_count, int resilience,
             const MinGraphOptions& options)
      : all(edges), n(node_count), need(2 * resilience + 1), k(resilience), opt(options),
        degree(node_count, node_count - 1) {}

  void record() {
    std::vector<Edge> survivor_edges;
    survivor_edges.reserve(all.size() - chosen.size());
    std::size_t next = 0;
    for (int i = 0; i < static_cast<int>(all.size()); ++i) {
      if (next < chosen.size() && chosen[next] == i) {
        ++next;
        continue;
      }
      survivor_edges.push_back(all[i]);
    }
    NcsGraph g(n, survivor_edges);
    if (!k_resilient(g, k)) return;
    if (opt.dedup_isomorphic) {
      auto [it, fresh] = classes.insert(canonical_key(n, survivor_edges));
      (void)it;
      if (!fresh) return;
    }
    ++survivors;
    if (static_cast<int>(kept.size()) < opt.limit) kept.push_back(std::move(g));
  }

  void run(int start) {
    int slots = target - static_cast<int>(chosen.size());
    if (slots == 0) {
      record();
      return;
    }
    for (int i = start; i <= static_cast<int>(all.size()) - slots; ++i) {
      const Edge& e = all[i];
      // Supersets of a removal that already sinks a node below 2k+1 can never
      // recover, so the branch is dropped whole.
      if (degree[e.a] - 1 < need || degree[e.b] - 1 < need) continue;
      --degree[e.a];
      --degree[e.b];
      chosen.push_back(i);
      run(i + 1);
      chosen.pop_back();
      ++degree[e.a];
      ++degree[e.b];
    }
  }
};

}  // namespace

MinGraphResult minimum_ncs_graphs(int n, int k, const MinGraphOptions& opt) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (opt.limit < 0) throw std::invalid_argument("limit must be non-negative");
  if (2 * k + 1 > n - 1)
    throw DomainError("no " + std::to_string(n) + "-node graph is " + std::to_string(k) +
                      "-resilient");
  if (opt.dedup_isomorphic && n > 8)
    throw std::invalid_argument("isomorphism dedup supported for n <= 8 only");

  NcsGraph kn = NcsGraph::complete(n);

  MinGraphResult best;
  for (int m = 0;; ++m) {
    Enumerator en(kn.edges(), n, k, opt);
    en.target = m;
    en.run(0);
    if (en.survivors == 0) break;
    best.graphs = std::move(en.kept);
    best.survivor_count = en.survivors;
    best.edge_count = kn.edge_count() - m;
  }

  best.lower_bound = edge_count_lower_bound(n, k);
  best.achieves_lower_bound = best.edge_count == best.lower_bound;
  return best;
}

NcsGraph greedy_min_degree_construction(int n, int k) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (2 * k + 1 > n - 1)
    throw DomainError("no " + std::to_string(n) + "-node graph has minimum degree " +
                      std::to_string(2 * k + 1));

  std::set<Edge> edges;
  for (int j = 1; j <= k; ++j)
    for (int i = 0; i < n; ++i) edges.insert(make_edge(i, (i + j) % n));
  if (n % 2 == 0) {
    for (int i = 0; i < n / 2; ++i) edges.insert(make_edge(i, i + n / 2));
  } else {
    for (int i = 0; i <= (n - 1) / 2; ++i) edges.insert(make_edge(i, i + (n - 1) / 2));
  }
  return NcsGraph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

}  // namespace ncs
