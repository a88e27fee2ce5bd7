#pragma once

#include "ncs/graph.hpp"

namespace ncs {

// Maximum resilience of the complete graph on n nodes: floor(n/2) - 1.
int tight_bound_complete(int n);

struct ResilienceReport {
  int edge_connectivity = 0;
  int tight_bound = 0;          // floor((lambda - 1) / 2)
  std::vector<Edge> witness_cut;   // minimum cut realizing lambda
};

// Requires a connected graph with >= 2 nodes (DomainError otherwise).
ResilienceReport tight_bound(const NcsGraph& g);

// Independent reference: grow K and remove every 2K-subset of edges until one
// removal disconnects the graph; the bound is that K minus one. Exponential;
// meant for small graphs in tests. DomainError if g is disconnected.
int tight_bound_enumeration_oracle(const NcsGraph& g);

// k faults are always correctable iff the graph is (2k+1)-edge-connected.
bool k_resilient(const NcsGraph& g, int k);

// Minimum edge count any k-resilient n-node graph can have: ceil(n(2k+1)/2).
long long edge_count_lower_bound(int n, int k);

// Necessary condition: every node needs degree >= 2k+1.
bool min_degree_check(const NcsGraph& g, int k);

}  // namespace ncs
