#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "ncs/linsys.hpp"
#include "ncs/solvers.hpp"

namespace ncs {

// splitmix64 finalizer; used for seeding and substream derivation.
std::uint64_t mix64(std::uint64_t z);

// Deterministic random source: an mt19937_64 engine (bit-exact per the C++
// standard) with hand-rolled value transforms, so that identical seeds give
// identical streams on every platform. substream(i) is an independent stream
// derived as mix64(mix64(seed) + i + 1); campaigns use one substream per
// trial, which makes results independent of execution order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  std::uint64_t below(std::uint64_t n);        // uniform in [0, n), unbiased
  double uniform01();                          // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);
  double normal(double mean, double sigma);    // Box-Muller, two draws per call

  Rng substream(std::uint64_t index) const;

  // k distinct values from [0, n), ascending.
  std::vector<int> sample_indices(int n, int k);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Injected faults for one round; values must be nonzero.
struct FaultMap {
  std::map<Edge, Rational> faults;
};

struct NoiseModel {
  double gaussian_sigma = 1.0;
  double fault_magnitude_lo = 2.0;   // |F| drawn uniformly from [lo, hi]
  double fault_magnitude_hi = 8.0;
  double fault_probability = 0.3;    // per-edge injection rate (generators)
  double threshold_eta = 2.0;        // residual / defect acceptance bound
};

// Exact round: per canonical edge, truth pair offset plus that edge's fault.
MeasurementSet generate_round(const NcsGraph& g, const ClockState& truth,
                              const FaultMap& faults);

// Noisy round: adds N(0, sigma) per session on top of fault + pair offset.
// Deterministic in `seed`; noise is drawn in ascending edge order.
NoisyMeasurements generate_round(const NcsGraph& g, const std::vector<double>& truth_offsets,
                                 const std::map<Edge, double>& faults,
                                 const NoiseModel& noise, std::uint64_t seed);

enum class Solver { Exhaustive, Fast };

struct CampaignConfig {
  std::vector<int> fault_counts;   // one batch of trials per entry
  int trials_per_count = 100;
  std::uint64_t seed = 0;
  NoiseModel noise;
  Solver solver = Solver::Fast;
};

struct TrialRecord {
  int trial_id = 0;
  int fault_count = 0;
  std::vector<Edge> injected_fault_edges;
  std::vector<Edge> estimated_fault_edges;   // defects with |e-hat| > eta
  bool distributions_identical = false;
  double mse_offsets = 0.0;
  Solver solver_used = Solver::Fast;
};

// Noisy fault-injection campaign (the measurement-error study): per trial,
// random truth in [-10,10], `fault_count` random fault edges with magnitudes
// in [lo,hi] and random signs, Gaussian session noise, then the chosen noisy
// solver. Bit-identical output for a given (config, seed) at any thread cap.
std::vector<TrialRecord> run_campaign(const NcsGraph& g, const CampaignConfig& config);

enum class ValueStrategy { Random, EqualValueCut };

struct SweepSummary {
  int fault_count = 0;
  long long placements_tested = 0;
  long long successes = 0;
  bool exhaustive_placements = true;
};

// Exact-mode resilience audit: for each K = 0..max_faults, inject K faults
// over many placements and count exact recoveries by the voting solver
// (wrong offsets or a vote tie is a failure). Placements are exhaustive up
// to 500 combinations, uniformly sampled beyond that. Random strategy places
// faults anywhere with random nonzero values; EqualValueCut places them on
// the witness min cut with oriented equal values, the construction that
// defeats correction once K exceeds the tight bound.
std::vector<SweepSummary> sweep_resilience(const NcsGraph& g, int max_faults,
                                           ValueStrategy strategy, std::uint64_t seed);

// The oriented equal-value fault assignment itself: the lexicographically
// last `fault_count` edges of the witness min cut, value +5 when the canonical
// first endpoint lies on node 0's side of the cut, -5 otherwise. With
// fault_count = tight_bound + 1 this defeats both solvers.
FaultMap equal_value_cut_counterexample(const NcsGraph& g, int fault_count);

}  // namespace ncs
