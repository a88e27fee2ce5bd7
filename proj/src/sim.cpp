#include "ncs/sim.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>

#include "ncs/bounds.hpp"
#include "ncs/combinatorics.hpp"
#include "ncs/parallel.hpp"

namespace ncs {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

std::uint64_t Rng::next_u64() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  const std::uint64_t min = (0 - n) % n;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= min) return r % n;
  }
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Rng::normal(double mean, double sigma) {
  double u1 = 1.0 - uniform01();   // (0, 1]; keeps the log finite
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  return mean + sigma * r * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

Rng Rng::substream(std::uint64_t index) const {
  return Rng(mix64(mix64(seed_) + index + 1));
}

std::vector<int> Rng::sample_indices(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("sample_indices needs 0 <= k <= n");
  // Floyd's subset sampling: uniform without replacement.
  std::set<int> picked;
  for (int j = n - k; j < n; ++j) {
    int t = static_cast<int>(below(static_cast<std::uint64_t>(j) + 1));
    if (!picked.insert(t).second) picked.insert(j);
  }
  return std::vector<int>(picked.begin(), picked.end());
}

MeasurementSet generate_round(const NcsGraph& g, const ClockState& truth,
                              const FaultMap& faults) {
  if (static_cast<int>(truth.offsets.size()) != g.node_count() - 1)
    throw std::invalid_argument("truth offset count does not match node count");
  for (const auto& [e, v] : faults.faults) {
    if (!g.has_edge(e.a, e.b)) throw std::invalid_argument("fault on non-edge " + to_string(e));
    if (v == 0) throw std::invalid_argument("fault values must be nonzero");
  }
  MeasurementSet m;
  for (const Edge& e : g.edges()) {
    Rational value = truth.pair_offset(e.a, e.b);
    auto it = faults.faults.find(e);
    if (it != faults.faults.end()) value += it->second;
    m.values[e] = value;
  }
  return m;
}

NoisyMeasurements generate_round(const NcsGraph& g, const std::vector<double>& truth_offsets,
                                 const std::map<Edge, double>& faults,
                                 const NoiseModel& noise, std::uint64_t seed) {
  if (static_cast<int>(truth_offsets.size()) != g.node_count() - 1)
    throw std::invalid_argument("truth offset count does not match node count");
  for (const auto& [e, v] : faults) {
    if (!g.has_edge(e.a, e.b)) throw std::invalid_argument("fault on non-edge " + to_string(e));
    if (v == 0.0) throw std::invalid_argument("fault values must be nonzero");
  }
  Rng rng(seed);
  NoisyMeasurements m;
  for (const Edge& e : g.edges()) {
    double da = e.a == 0 ? 0.0 : truth_offsets[e.a - 1];
    double db = truth_offsets[e.b - 1];
    double value = da - db + rng.normal(0.0, noise.gaussian_sigma);
    auto it = faults.find(e);
    if (it != faults.end()) value += it->second;
    m[e] = value;
  }
  return m;
}

std::vector<TrialRecord> run_campaign(const NcsGraph& g, const CampaignConfig& config) {
  if (g.node_count() < 2) throw std::invalid_argument("campaign needs >= 2 nodes");
  // Solvers would throw on unreachable nodes, and a throw on a worker thread
  // is fatal; reject up front instead.
  if (!is_connected(g)) throw DomainError("graph is not connected");
  if (config.trials_per_count < 0) throw std::invalid_argument("negative trial count");
  for (int fc : config.fault_counts)
    if (fc < 0 || fc > g.edge_count())
      throw std::invalid_argument("fault count outside [0, edge count]");
  if (config.noise.fault_magnitude_lo > config.noise.fault_magnitude_hi ||
      config.noise.gaussian_sigma < 0.0 || config.noise.threshold_eta < 0.0)
    throw std::invalid_argument("malformed noise model");
  if (config.noise.fault_magnitude_lo <= config.noise.threshold_eta)
    std::cerr << "note: fault magnitude lower bound does not exceed the detection "
                 "threshold; the smallest faults may evade detection\n";

  const Rng root(config.seed);
  const double eta = config.noise.threshold_eta;
  const std::size_t total =
      config.fault_counts.size() * static_cast<std::size_t>(config.trials_per_count);
  std::vector<TrialRecord> records(total);

  parallel_for(total, [&](std::size_t t) {
    const int fault_count = config.fault_counts[t / config.trials_per_count];
    Rng rng = root.substream(t);

    std::vector<double> truth(g.node_count() - 1);
    for (double& v : truth) v = rng.uniform(-10.0, 10.0);

    std::vector<int> idx = rng.sample_indices(g.edge_count(), fault_count);
    std::map<Edge, double> faults;
    for (int i : idx) {
      double magnitude =
          rng.uniform(config.noise.fault_magnitude_lo, config.noise.fault_magnitude_hi);
      double sign = rng.below(2) == 0 ? 1.0 : -1.0;
      faults[g.edges()[i]] = sign * magnitude;
    }

    NoisyMeasurements m = generate_round(g, truth, faults, config.noise, rng.next_u64());
    NoisySyncResult res = config.solver == Solver::Exhaustive
                              ? ncs_exhaustive_noisy(g, m, eta)
                              : ncs_fast_noisy(g, m, eta);

    TrialRecord& rec = records[t];
    rec.trial_id = static_cast<int>(t);
    rec.fault_count = fault_count;
    rec.solver_used = config.solver;
    for (const auto& [e, v] : faults) rec.injected_fault_edges.push_back(e);
    for (const auto& [e, v] : res.solution.fault_estimates)
      if (std::abs(v) > eta) rec.estimated_fault_edges.push_back(e);
    rec.distributions_identical = rec.injected_fault_edges == rec.estimated_fault_edges;
    double acc = 0.0;
    for (std::size_t j = 0; j < truth.size(); ++j) {
      double d = res.solution.offsets[j] - truth[j];
      acc += d * d;
    }
    rec.mse_offsets = acc / static_cast<double>(truth.size());
  });
  return records;
}

namespace {

// Nodes still reachable from the reference once the cut edges are removed.
std::set<NodeId> reference_side_of_cut(const NcsGraph& g, const std::vector<Edge>& cut) {
  std::set<Edge> removed(cut.begin(), cut.end());
  std::vector<std::vector<NodeId>> adj = g.adjacency();
  std::set<NodeId> side{0};
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u]) {
      if (removed.count(make_edge(u, v))) continue;
      if (side.insert(v).second) stack.push_back(v);
    }
  }
  return side;
}

// Random nonzero rational with small numerator/denominator.
Rational random_fault_value(Rng& rng) {
  long long num = 1 + static_cast<long long>(rng.below(12));
  long long den = 1 + static_cast<long long>(rng.below(4));
  Rational v(num, den);
  return rng.below(2) == 0 ? v : -v;
}

Rational random_offset_value(Rng& rng) {
  long long num = static_cast<long long>(rng.below(25)) - 12;
  long long den = 1 + static_cast<long long>(rng.below(4));
  return Rational(num, den);
}

// One exact-mode instance: inject, run the voting solver, compare to truth.
bool instance_corrected(const NcsGraph& g, const ClockState& truth, const FaultMap& fm) {
  MeasurementSet m = generate_round(g, truth, fm);
  try {
    SyncResult r = ncs_fast(g, m);
    return r.solution.offsets == truth.offsets;
  } catch (const VoteTieError&) {
    return false;
  }
}

}  // namespace

std::vector<SweepSummary> sweep_resilience(const NcsGraph& g, int max_faults,
                                           ValueStrategy strategy, std::uint64_t seed) {
  if (max_faults < 0 || max_faults > g.edge_count())
    throw std::invalid_argument("max_faults outside [0, edge count]");
  const long long cap = 500;
  const int e = g.edge_count();
  const Rng root(seed);
  std::vector<SweepSummary> out;

  std::vector<Edge> cut;
  if (strategy == ValueStrategy::EqualValueCut) {
    cut = tight_bound(g).witness_cut;   // also rejects disconnected graphs
  } else if (!is_connected(g)) {
    throw DomainError("graph is not connected");
  }

  for (int k = 0; k <= max_faults; ++k) {
    SweepSummary s;
    s.fault_count = k;

    if (strategy == ValueStrategy::EqualValueCut) {
      // One constructed placement per fault count, when the cut is big enough.
      s.exhaustive_placements = true;
      if (k <= static_cast<int>(cut.size())) {
        Rng rng = root.substream(static_cast<std::uint64_t>(k));
        ClockState truth;
        for (int j = 1; j < g.node_count(); ++j)
          truth.offsets.push_back(random_offset_value(rng));
        s.placements_tested = 1;
        if (instance_corrected(g, truth, equal_value_cut_counterexample(g, k))) ++s.successes;
      }
      out.push_back(s);
      continue;
    }

    const long long combos = binomial_capped(e, k, cap);
    s.exhaustive_placements = combos <= cap;
    const long long placements = s.exhaustive_placements ? combos : cap;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;

    for (long long p = 0; p < placements; ++p) {
      Rng rng = root.substream(static_cast<std::uint64_t>(k) * 1000003ULL +
                               static_cast<std::uint64_t>(p));
      std::vector<int> placement;
      if (s.exhaustive_placements) {
        placement = idx;
        next_combination(idx, e);
      } else {
        placement = rng.sample_indices(e, k);
      }
      ClockState truth;
      for (int j = 1; j < g.node_count(); ++j)
        truth.offsets.push_back(random_offset_value(rng));
      FaultMap fm;
      for (int i : placement) fm.faults[g.edges()[i]] = random_fault_value(rng);
      ++s.placements_tested;
      if (instance_corrected(g, truth, fm)) ++s.successes;
    }
    out.push_back(s);
  }
  return out;
}

FaultMap equal_value_cut_counterexample(const NcsGraph& g, int fault_count) {
  if (fault_count < 0) throw std::invalid_argument("fault count must be non-negative");
  ResilienceReport rep = tight_bound(g);
  const std::vector<Edge>& cut = rep.witness_cut;
  if (fault_count > static_cast<int>(cut.size()))
    throw std::invalid_argument("fault count exceeds the witness cut size");

  std::set<NodeId> side = reference_side_of_cut(g, cut);
  FaultMap fm;
  for (std::size_t i = cut.size() - fault_count; i < cut.size(); ++i) {
    const Edge& e = cut[i];
    fm.faults[e] = side.count(e.a) ? Rational(5) : Rational(-5);
  }
  return fm;
}

}  // namespace ncs
