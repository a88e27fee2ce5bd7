#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ncs/error.hpp"
#include "ncs/graph.hpp"
#include "ncs/rational.hpp"

namespace ncs {

// True clock offsets relative to node 0: offsets[j-1] = delta_{j0}.
struct ClockState {
  std::vector<Rational> offsets;

  const Rational& offset(NodeId j) const;           // j >= 1
  Rational pair_offset(NodeId a, NodeId b) const;   // delta_{a0} - delta_{b0}
};

// One sync session value per canonical edge (a, b): the session estimates
// delta_{a0} - delta_{b0}, plus the session's fault if it had one.
struct MeasurementSet {
  std::map<Edge, Rational> values;
};

// Assumed-faulty edges; sorted, unique.
using FaultDistribution = std::vector<Edge>;

using Matrix = std::vector<std::vector<Rational>>;
using Vector = std::vector<Rational>;

// Per-round equation system. Rows follow the graph's sorted edge order; the
// first offset_count columns are delta-hat_{10..}, then one fault column per
// assumed edge (same order as fault_edges). For edge (a, b):
//   a == 0:  -delta-hat_{b0} (+ e-hat) = measured value
//   a != 0:  delta-hat_{a0} - delta-hat_{b0} (+ e-hat) = measured value
// All coefficients are in {-1, 0, 1}.
struct LinearSystem {
  Matrix a;
  Vector b;
  int offset_count = 0;
  FaultDistribution fault_edges;
};

LinearSystem build_system(const NcsGraph& g, const MeasurementSet& m,
                          const FaultDistribution& assumed);

enum class SolveStatus { Unique, NoSolution, Underdetermined };

struct NcsSolution {
  std::vector<Rational> offsets;              // delta-hat for nodes 1..N-1
  std::map<Edge, Rational> fault_estimates;   // e-hat per assumed edge
};

// Exact rank classification of [A|b] by Gaussian elimination with partial
// pivoting (largest absolute pivot; ties -> lowest row). x is set iff Unique.
struct RawSolve {
  SolveStatus status = SolveStatus::NoSolution;
  std::vector<Rational> x;
  int rank_a = 0;
  int rank_ab = 0;
};

RawSolve classify_and_solve(const Matrix& a, const Vector& b);

struct SolveOutcome {
  SolveStatus status = SolveStatus::NoSolution;
  std::optional<NcsSolution> solution;   // set iff status == Unique
};

SolveOutcome solve_system(const LinearSystem& sys);

// Floating-point side, used by the noisy mode only.
using NoisyMeasurements = std::map<Edge, double>;

struct NoisySolution {
  std::vector<double> offsets;
  std::map<Edge, double> fault_estimates;
};

struct LeastSquaresResult {
  NoisySolution candidate;
  std::map<Edge, double> residuals;   // per edge: fitted row value minus measurement
};

// Least-squares fit of the same per-round system via normal equations.
// Column independence is checked exactly on the {-1,0,1} structure matrix;
// rank deficiency throws RankDeficientError.
LeastSquaresResult residual_least_squares(const NcsGraph& g, const NoisyMeasurements& m,
                                          const FaultDistribution& assumed);

}  // namespace ncs
