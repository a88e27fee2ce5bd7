#include "ncs/tiered.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "ncs/bounds.hpp"
#include "ncs/error.hpp"

namespace ncs {

Rational degree_of_resilience(int k, long long edge_count) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (edge_count <= 0) throw std::invalid_argument("edge count must be positive");
  return Rational(k, edge_count);
}

DorResult max_dor_network(int lo, int hi) {
  if (lo < 4) throw std::invalid_argument("range must start at n >= 4");
  if (hi < lo) throw std::invalid_argument("empty node range");
  DorResult best;
  for (int n = lo; n <= hi; ++n) {
    for (int k = 1; k <= tight_bound_complete(n); ++k) {
      Rational dor = degree_of_resilience(k, edge_count_lower_bound(n, k));
      if (best.node_count == 0 || dor > best.dor) best = DorResult{n, k, dor};
    }
  }
  return best;
}

TierPlan build_tiered_plan(int n) {
  if (n < 4) throw DomainError("tiered plan needs n >= 4");

  TierPlan plan;
  plan.node_count = n;
  std::vector<NodeId> current(n);
  std::iota(current.begin(), current.end(), 0);

  while (current.size() > 1) {
    const std::size_t groups = std::max<std::size_t>(1, current.size() / 4);
    std::vector<TierGroup> tier;
    tier.reserve(groups);
    for (std::size_t gi = 0; gi < groups; ++gi) {
      const std::size_t begin = gi * 4;
      const std::size_t end = gi + 1 == groups ? current.size() : begin + 4;
      TierGroup grp;
      grp.members.assign(current.begin() + begin, current.begin() + end);
      grp.representative = grp.members.front();
      tier.push_back(std::move(grp));
    }
    std::vector<NodeId> next;
    next.reserve(tier.size());
    for (const TierGroup& grp : tier) next.push_back(grp.representative);
    plan.tiers.push_back(std::move(tier));
    current = std::move(next);
  }

  int weakest = -1;
  for (const auto& tier : plan.tiers)
    for (const TierGroup& grp : tier) {
      const int size = static_cast<int>(grp.members.size());
      plan.total_edges += static_cast<long long>(size) * (size - 1) / 2;
      ++plan.group_count;
      const int bound = tight_bound_complete(size);
      if (weakest < 0 || bound < weakest) weakest = bound;
    }
  plan.per_group_resilience = weakest;
  plan.flat_edge_lower_bound = edge_count_lower_bound(n, plan.group_count);
  return plan;
}

NcsGraph tiered_graph(const TierPlan& plan) {
  std::vector<Edge> edges;
  for (const auto& tier : plan.tiers)
    for (const TierGroup& grp : tier)
      for (std::size_t i = 0; i < grp.members.size(); ++i)
        for (std::size_t j = i + 1; j < grp.members.size(); ++j)
          edges.push_back(make_edge(grp.members[i], grp.members[j]));
  return NcsGraph(plan.node_count, std::move(edges));
}

std::vector<Rational> synchronize_tiered(const TierPlan& plan, const MeasurementSet& m) {
  NcsGraph full = tiered_graph(plan);
  if (static_cast<int>(m.values.size()) != full.edge_count())
    throw std::invalid_argument("measurement count does not match the tiered edge set");
  for (const Edge& e : full.edges())
    if (!m.values.count(e)) throw std::invalid_argument("missing measurement for " + to_string(e));

  std::vector<std::optional<Rational>> resolved(plan.node_count);
  resolved[0] = Rational(0);

  // Top tier first; lower groups then hang off representatives the tier above
  // already placed.
  for (int t = static_cast<int>(plan.tiers.size()) - 1; t >= 0; --t) {
    for (const TierGroup& grp : plan.tiers[t]) {
      const auto& mem = grp.members;
      const int size = static_cast<int>(mem.size());
      if (!resolved[mem[0]]) throw std::logic_error("group representative not yet resolved");

      NcsGraph local = NcsGraph::complete(size);
      MeasurementSet lm;
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
          lm.values[Edge{i, j}] = m.values.at(make_edge(mem[i], mem[j]));

      SyncResult r = ncs_fast(local, lm);
      const Rational& base = *resolved[mem[0]];
      for (int j = 1; j < size; ++j) resolved[mem[j]] = base + r.solution.offsets[j - 1];
    }
  }

  std::vector<Rational> out(plan.node_count);
  for (int v = 0; v < plan.node_count; ++v) {
    if (!resolved[v]) throw std::logic_error("node left unresolved by the plan");
    out[v] = *resolved[v];
  }
  return out;
}

}  // namespace ncs
