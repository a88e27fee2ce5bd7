#pragma once

#include "ncs/linsys.hpp"
#include "ncs/solvers.hpp"

namespace ncs {

// Resilience per unit of session cost: k / edge_count, exact.
Rational degree_of_resilience(int k, long long edge_count);

struct DorResult {
  int node_count = 0;
  int best_k = 0;
  Rational dor;
};

// Over n in [lo, hi] (lo >= 4) and feasible k in [1, floor(n/2)-1], maximize
// k / edge_count_lower_bound(n, k). Ties keep the smallest n. The winner over
// [4, 8] is the 4-node complete group at 1/6, which is why tiers use K4.
DorResult max_dor_network(int lo, int hi);

struct TierGroup {
  std::vector<NodeId> members;   // ascending global ids
  NodeId representative = 0;     // lowest member; carried into the next tier
};

struct TierPlan {
  int node_count = 0;
  // tiers[0] groups the physical nodes; each later tier groups the previous
  // tier's representatives, ending with a single top group.
  std::vector<std::vector<TierGroup>> tiers;
  int group_count = 0;            // across all tiers
  long long total_edges = 0;      // sum of complete-graph edges per group
  int per_group_resilience = 0;   // weakest group's tight bound
  // Edge lower bound a flat graph would need for resilience equal to the
  // group count (one tolerated fault per group).
  long long flat_edge_lower_bound = 0;
};

// Groups of exactly 4 where possible; the last group of a tier absorbs any
// remainder as a group of size 5-7. Representative counts of 2 or 3 (possible
// for n in [8, 15]) form a final top group of that size with zero resilience,
// which per_group_resilience reports honestly. Requires n >= 4.
TierPlan build_tiered_plan(int n);

// Union of every group's complete internal edge set, over global node ids.
NcsGraph tiered_graph(const TierPlan& plan);

// Top-down sync: solve the top group against node 0, then each lower tier's
// groups against their already-resolved representatives, composing offsets.
// m must cover exactly the edges of tiered_graph(plan). Each group tolerates
// faults up to its own tight bound. Returns one offset per node, indexed by
// node id; entry 0 is zero.
std::vector<Rational> synchronize_tiered(const TierPlan& plan, const MeasurementSet& m);

}  // namespace ncs
