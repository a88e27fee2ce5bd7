#pragma once

#include <optional>

#include "ncs/linsys.hpp"

namespace ncs {

struct SyncResult {
  NcsSolution solution;
  FaultDistribution assumed_distribution;
  long long iterations_examined = 0;
};

// Exhaustive search: for k = 0..|E|, try every k-subset of edges as the
// assumed fault distribution (lexicographic over the sorted edge order) and
// return the first uniquely solvable system. Empty optional if none is ever
// unique, which cannot happen for connected graphs (the complement of any
// spanning tree is uniquely solvable at k = |E|-(N-1)).
std::optional<SyncResult> ncs_exhaustive(const NcsGraph& g, const MeasurementSet& m);

// Voting solver: per node, chain-substitute measurements along a maximum set
// of edge-disjoint paths from node 0 and take the strict plurality value.
// A tie throws VoteTieError. Faults are the nonzero post-hoc defects.
SyncResult ncs_fast(const NcsGraph& g, const MeasurementSet& m);

// Per-edge defect e-hat = measured - (offset_a - offset_b); zero defects are
// omitted. offsets has one entry per node 1..N-1.
std::map<Edge, Rational> detect_faults(const NcsGraph& g, const MeasurementSet& m,
                                       const std::vector<Rational>& offsets);

struct NoisySyncResult {
  NoisySolution solution;
  FaultDistribution assumed_distribution;
  long long iterations_examined = 0;
  // Exhaustive mode: false when no distribution passed the residual check and
  // the k=0 least-squares candidate was returned as a fallback.
  bool accepted = true;
};

// Noisy counterpart of the exhaustive search: accepts the first distribution
// whose least-squares residuals are all within eta in magnitude.
// Rank-deficient distributions are skipped.
NoisySyncResult ncs_exhaustive_noisy(const NcsGraph& g, const NoisyMeasurements& m,
                                     double eta);

// Noisy counterpart of the voting solver. Candidates within a 2*eta span are
// clustered (sorted sweep); the largest cluster wins, ties going to the
// cluster with the smaller representative; representative = median. Fault
// estimates keep defects with magnitude > eta.
NoisySyncResult ncs_fast_noisy(const NcsGraph& g, const NoisyMeasurements& m, double eta);

}  // namespace ncs
