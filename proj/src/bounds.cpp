#include "ncs/bounds.hpp"

#include "ncs/combinatorics.hpp"
#include "ncs/error.hpp"

namespace ncs {

int tight_bound_complete(int n) {
  if (n < 2) throw std::invalid_argument("complete-graph bound needs n >= 2");
  return n / 2 - 1;
}

ResilienceReport tight_bound(const NcsGraph& g) {
  if (g.node_count() < 2) throw DomainError("resilience bound needs >= 2 nodes");
  ConnectivityWitness w = edge_connectivity_witness(g);
  if (w.lambda == 0) throw DomainError("graph is not connected");
  ResilienceReport r;
  r.edge_connectivity = w.lambda;
  r.tight_bound = (w.lambda - 1) / 2;
  r.witness_cut = std::move(w.cut);
  return r;
}

int tight_bound_enumeration_oracle(const NcsGraph& g) {
  if (g.node_count() < 2) throw DomainError("resilience bound needs >= 2 nodes");
  if (!is_connected(g)) throw DomainError("graph is not connected");
  const int e = g.edge_count();
  const auto& edges = g.edges();

  for (int k = 1;; ++k) {
    const int removals = 2 * k;
    // Fewer edges than the removal size: no removal of that size exists, so
    // no disconnection is ever witnessed at this or any larger k.
    if (removals > e) return k - 1;
    std::vector<int> idx(removals);
    for (int i = 0; i < removals; ++i) idx[i] = i;
    while (true) {
      std::vector<Edge> removal;
      removal.reserve(removals);
      for (int i : idx) removal.push_back(edges[i]);
      if (!is_connected_after_removal(g, removal)) return k - 1;
      if (!next_combination(idx, e)) break;
    }
  }
}

bool k_resilient(const NcsGraph& g, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  return edge_connectivity(g) >= 2 * k + 1;
}

long long edge_count_lower_bound(int n, int k) {
  if (n < 2 || k < 0) throw std::invalid_argument("need n >= 2 and k >= 0");
  long long product = static_cast<long long>(n) * (2 * static_cast<long long>(k) + 1);
  return (product + 1) / 2;
}

bool min_degree_check(const NcsGraph& g, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (g.node_count() == 0) return false;
  return g.min_degree() >= 2 * k + 1;
}

}  // namespace ncs
