#include "ncs/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncs/combinatorics.hpp"

namespace ncs {

namespace {

void check_exact_measurements(const NcsGraph& g, const MeasurementSet& m) {
  if (static_cast<int>(m.values.size()) != g.edge_count())
    throw std::invalid_argument("measurement count does not match edge count");
  for (const auto& e : g.edges())
    if (!m.values.count(e)) throw std::invalid_argument("missing measurement for " + to_string(e));
}

void check_noisy_measurements(const NcsGraph& g, const NoisyMeasurements& m) {
  if (static_cast<int>(m.size()) != g.edge_count())
    throw std::invalid_argument("measurement count does not match edge count");
  for (const auto& e : g.edges())
    if (!m.count(e)) throw std::invalid_argument("missing measurement for " + to_string(e));
}

// Value a session on edge {u, w} reports for the u -> w direction. Canonical
// storage holds the (min, max) direction, so walking against it flips sign.
Rational directed_measurement(const MeasurementSet& m, NodeId u, NodeId w) {
  if (u < w) return m.values.at(Edge{u, w});
  return -m.values.at(Edge{w, u});
}

double directed_measurement(const NoisyMeasurements& m, NodeId u, NodeId w) {
  if (u < w) return m.at(Edge{u, w});
  return -m.at(Edge{w, u});
}

}  // namespace

std::optional<SyncResult> ncs_exhaustive(const NcsGraph& g, const MeasurementSet& m) {
  check_exact_measurements(g, m);
  const auto& edges = g.edges();
  const int e = g.edge_count();
  long long iterations = 0;

  for (int k = 0; k <= e; ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    bool more = true;
    while (more) {
      FaultDistribution assumed;
      assumed.reserve(idx.size());
      for (int i : idx) assumed.push_back(edges[i]);
      ++iterations;
      SolveOutcome out = solve_system(build_system(g, m, assumed));
      if (out.status == SolveStatus::Unique) {
        SyncResult r;
        r.solution = std::move(*out.solution);
        r.assumed_distribution = std::move(assumed);
        r.iterations_examined = iterations;
        return r;
      }
      more = k > 0 && next_combination(idx, e);
    }
  }
  return std::nullopt;
}

SyncResult ncs_fast(const NcsGraph& g, const MeasurementSet& m) {
  check_exact_measurements(g, m);
  const int n = g.node_count();
  std::vector<Rational> offsets(n - 1, Rational(0));
  long long iterations = 0;

  for (NodeId v = 1; v < n; ++v) {
    DisjointPaths dp = max_edge_disjoint_paths(g, 0, v);
    if (dp.count == 0) throw std::invalid_argument("node " + std::to_string(v) +
                                                   " is unreachable from the reference");
    std::map<Rational, int> tally;
    for (const Path& p : dp.paths) {
      Rational acc(0);
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        acc -= directed_measurement(m, p[i], p[i + 1]);
      ++tally[acc];
      ++iterations;
    }
    const Rational* best = nullptr;
    int best_count = 0;
    bool tie = false;
    for (const auto& [value, count] : tally) {
      if (count > best_count) {
        best = &value;
        best_count = count;
        tie = false;
      } else if (count == best_count) {
        tie = true;
      }
    }
    if (tie) throw VoteTieError(v, "ambiguous vote at node " + std::to_string(v));
    offsets[v - 1] = *best;
  }

  SyncResult r;
  r.solution.offsets = std::move(offsets);
  r.solution.fault_estimates = detect_faults(g, m, r.solution.offsets);
  for (const auto& [edge, value] : r.solution.fault_estimates)
    r.assumed_distribution.push_back(edge);
  r.iterations_examined = iterations;
  return r;
}

std::map<Edge, Rational> detect_faults(const NcsGraph& g, const MeasurementSet& m,
                                       const std::vector<Rational>& offsets) {
  check_exact_measurements(g, m);
  if (static_cast<int>(offsets.size()) != g.node_count() - 1)
    throw std::invalid_argument("offset count does not match node count");
  std::map<Edge, Rational> defects;
  for (const Edge& e : g.edges()) {
    Rational da = e.a == 0 ? Rational(0) : offsets[e.a - 1];
    Rational db = offsets[e.b - 1];
    Rational defect = m.values.at(e) - (da - db);
    if (defect != 0) defects[e] = defect;
  }
  return defects;
}

NoisySyncResult ncs_exhaustive_noisy(const NcsGraph& g, const NoisyMeasurements& m,
                                     double eta) {
  check_noisy_measurements(g, m);
  const auto& edges = g.edges();
  const int e = g.edge_count();
  long long iterations = 0;
  std::optional<NoisySolution> fallback;

  for (int k = 0; k <= e; ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    bool more = true;
    while (more) {
      FaultDistribution assumed;
      assumed.reserve(idx.size());
      for (int i : idx) assumed.push_back(edges[i]);
      ++iterations;
      try {
        LeastSquaresResult ls = residual_least_squares(g, m, assumed);
        if (k == 0) fallback = ls.candidate;
        double worst = 0.0;
        for (const auto& [edge, res] : ls.residuals) worst = std::max(worst, std::abs(res));
        if (worst <= eta) {
          NoisySyncResult r;
          r.solution = std::move(ls.candidate);
          r.assumed_distribution = std::move(assumed);
          r.iterations_examined = iterations;
          r.accepted = true;
          return r;
        }
      } catch (const RankDeficientError&) {
        // Distribution with dependent columns; skip it.
      }
      more = k > 0 && next_combination(idx, e);
    }
  }

  if (!fallback)
    throw RankDeficientError("no solvable distribution; graph is not connected");
  NoisySyncResult r;
  r.solution = std::move(*fallback);
  r.iterations_examined = iterations;
  r.accepted = false;
  return r;
}

NoisySyncResult ncs_fast_noisy(const NcsGraph& g, const NoisyMeasurements& m, double eta) {
  check_noisy_measurements(g, m);
  const int n = g.node_count();
  std::vector<double> offsets(n - 1, 0.0);
  long long iterations = 0;

  for (NodeId v = 1; v < n; ++v) {
    DisjointPaths dp = max_edge_disjoint_paths(g, 0, v);
    if (dp.count == 0) throw std::invalid_argument("node " + std::to_string(v) +
                                                   " is unreachable from the reference");
    std::vector<double> cand;
    cand.reserve(dp.paths.size());
    for (const Path& p : dp.paths) {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        acc -= directed_measurement(m, p[i], p[i + 1]);
      cand.push_back(acc);
      ++iterations;
    }
    std::sort(cand.begin(), cand.end());

    // Largest window whose span from its first element stays within 2*eta;
    // the scan keeps the earliest (hence smallest-valued) window on ties.
    std::size_t best_start = 0, best_len = 0, hi = 0;
    for (std::size_t lo = 0; lo < cand.size(); ++lo) {
      if (hi < lo) hi = lo;
      while (hi + 1 < cand.size() && cand[hi + 1] - cand[lo] <= 2.0 * eta) ++hi;
      std::size_t len = hi - lo + 1;
      if (len > best_len) {
        best_len = len;
        best_start = lo;
      }
    }
    std::size_t mid = best_start + best_len / 2;
    offsets[v - 1] = best_len % 2 == 1 ? cand[mid] : (cand[mid - 1] + cand[mid]) / 2.0;
  }

  NoisySyncResult r;
  r.solution.offsets = std::move(offsets);
  for (const Edge& e : g.edges()) {
    double da = e.a == 0 ? 0.0 : r.solution.offsets[e.a - 1];
    double db = r.solution.offsets[e.b - 1];
    double defect = m.at(e) - (da - db);
    if (std::abs(defect) > eta) {
      r.solution.fault_estimates[e] = defect;
      r.assumed_distribution.push_back(e);
    }
  }
  r.iterations_examined = iterations;
  r.accepted = true;
  return r;
}

}  // namespace ncs
