#pragma once

#include "ncs/graph.hpp"

namespace ncs {

struct MinGraphOptions {
  int limit = 16;                 // cap on returned graphs; counts stay exact
  bool dedup_isomorphic = false;  // keep one representative per isomorphism class
};

struct MinGraphResult {
  std::vector<NcsGraph> graphs;   // survivors at the deepest feasible removal
  long long survivor_count = 0;   // exact count (of classes when deduping)
  int edge_count = 0;
  long long lower_bound = 0;
  bool achieves_lower_bound = false;
};

// Top-down synthesis: strip m = 0, 1, 2, ... edges from the complete graph,
// keep the k-resilient survivors, and stop at the first m with none; the
// previous generation is minimal. Branches whose partial removal already
// breaks the min-degree condition are pruned (supersets only get worse).
// DomainError when 2k+1 > n-1 (no n-node graph can be k-resilient).
MinGraphResult minimum_ncs_graphs(int n, int k, const MinGraphOptions& opt = {});

// Harary-style direct construction meeting the lower bound exactly: ring of
// +-1..k neighbors plus diametral chords (one node gets degree 2k+2 when n is
// odd). Requires 0 <= k and 2k+1 <= n-1. The result is not necessarily
// k-resilient (k = 0 yields a matching); callers must check.
NcsGraph greedy_min_degree_construction(int n, int k);

}  // namespace ncs
