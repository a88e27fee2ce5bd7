#include "ncs/linsys.hpp"

#include <algorithm>
#include <cmath>

namespace ncs {

const Rational& ClockState::offset(NodeId j) const {
  if (j < 1 || j > static_cast<NodeId>(offsets.size()))
    throw std::invalid_argument("offset index out of range");
  return offsets[j - 1];
}

Rational ClockState::pair_offset(NodeId a, NodeId b) const {
  Rational da = a == 0 ? Rational(0) : offset(a);
  Rational db = b == 0 ? Rational(0) : offset(b);
  return da - db;
}

namespace {

void check_measurements(const NcsGraph& g, const std::map<Edge, Rational>& values) {
  if (static_cast<int>(values.size()) != g.edge_count())
    throw std::invalid_argument("measurement count does not match edge count");
  for (const auto& e : g.edges())
    if (!values.count(e)) throw std::invalid_argument("missing measurement for " + to_string(e));
}

void check_distribution(const NcsGraph& g, const FaultDistribution& assumed) {
  for (std::size_t i = 0; i < assumed.size(); ++i) {
    if (i > 0 && !(assumed[i - 1] < assumed[i]))
      throw std::invalid_argument("fault distribution must be sorted and unique");
    if (!g.has_edge(assumed[i].a, assumed[i].b))
      throw std::invalid_argument("assumed fault on non-edge " + to_string(assumed[i]));
  }
}

}  // namespace

LinearSystem build_system(const NcsGraph& g, const MeasurementSet& m,
                          const FaultDistribution& assumed) {
  if (g.node_count() < 2) throw std::invalid_argument("system needs >= 2 nodes");
  check_measurements(g, m.values);
  check_distribution(g, assumed);

  const int n = g.node_count();
  const int rows = g.edge_count();
  const int k = static_cast<int>(assumed.size());
  const int cols = (n - 1) + k;

  LinearSystem sys;
  sys.offset_count = n - 1;
  sys.fault_edges = assumed;
  sys.a.assign(rows, Vector(cols, Rational(0)));
  sys.b.assign(rows, Rational(0));

  for (int r = 0; r < rows; ++r) {
    const Edge& e = g.edges()[r];
    if (e.a != 0) sys.a[r][e.a - 1] = 1;
    sys.a[r][e.b - 1] = -1;
    auto it = std::lower_bound(assumed.begin(), assumed.end(), e);
    if (it != assumed.end() && *it == e)
      sys.a[r][(n - 1) + static_cast<int>(it - assumed.begin())] = 1;
    sys.b[r] = m.values.at(e);
  }
  return sys;
}

RawSolve classify_and_solve(const Matrix& a, const Vector& b) {
  const int rows = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("rhs size mismatch");
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix");

  Matrix w = a;
  Vector rhs = b;
  std::vector<int> pivot_col;
  int rank = 0;

  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    Rational best(0);
    for (int r = rank; r < rows; ++r) {
      Rational mag = abs(w[r][col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (pivot < 0) continue;
    std::swap(w[pivot], w[rank]);
    std::swap(rhs[pivot], rhs[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      if (w[r][col] == 0) continue;
      Rational f = w[r][col] / w[rank][col];
      for (int c = col; c < cols; ++c) w[r][c] -= f * w[rank][c];
      rhs[r] -= f * rhs[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  RawSolve out;
  out.rank_a = rank;
  out.rank_ab = rank;
  for (int r = rank; r < rows; ++r)
    if (rhs[r] != 0) {
      out.rank_ab = rank + 1;
      break;
    }

  if (out.rank_ab > out.rank_a) {
    out.status = SolveStatus::NoSolution;
    return out;
  }
  if (rank < cols) {
    out.status = SolveStatus::Underdetermined;
    return out;
  }

  out.status = SolveStatus::Unique;
  out.x.assign(cols, Rational(0));
  for (int i = rank - 1; i >= 0; --i) {
    int col = pivot_col[i];
    Rational acc = rhs[i];
    for (int c = col + 1; c < cols; ++c) acc -= w[i][c] * out.x[c];
    out.x[col] = acc / w[i][col];
  }
  return out;
}

SolveOutcome solve_system(const LinearSystem& sys) {
  RawSolve raw = classify_and_solve(sys.a, sys.b);
  SolveOutcome out;
  out.status = raw.status;
  if (raw.status != SolveStatus::Unique) return out;

  NcsSolution sol;
  sol.offsets.assign(raw.x.begin(), raw.x.begin() + sys.offset_count);
  for (std::size_t i = 0; i < sys.fault_edges.size(); ++i)
    sol.fault_estimates[sys.fault_edges[i]] = raw.x[sys.offset_count + i];
  out.solution = std::move(sol);
  return out;
}

LeastSquaresResult residual_least_squares(const NcsGraph& g, const NoisyMeasurements& m,
                                          const FaultDistribution& assumed) {
  if (g.node_count() < 2) throw std::invalid_argument("system needs >= 2 nodes");
  if (static_cast<int>(m.size()) != g.edge_count())
    throw std::invalid_argument("measurement count does not match edge count");
  for (const auto& e : g.edges())
    if (!m.count(e)) throw std::invalid_argument("missing measurement for " + to_string(e));
  check_distribution(g, assumed);

  const int n = g.node_count();
  const int rows = g.edge_count();
  const int k = static_cast<int>(assumed.size());
  const int cols = (n - 1) + k;

  // Structure matrix in {-1,0,1}; built once, used both for the exact rank
  // check and (as doubles) for the normal equations.
  std::vector<std::vector<int>> s(rows, std::vector<int>(cols, 0));
  std::vector<double> b(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    const Edge& e = g.edges()[r];
    if (e.a != 0) s[r][e.a - 1] = 1;
    s[r][e.b - 1] = -1;
    auto it = std::lower_bound(assumed.begin(), assumed.end(), e);
    if (it != assumed.end() && *it == e)
      s[r][(n - 1) + static_cast<int>(it - assumed.begin())] = 1;
    b[r] = m.at(e);
  }

  // Rank deficiency is structural, so decide it exactly rather than through a
  // floating-point pivot threshold.
  Matrix ra(rows, Vector(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) ra[r][c] = s[r][c];
  RawSolve rank_probe = classify_and_solve(ra, Vector(rows, Rational(0)));
  if (rank_probe.rank_a < cols)
    throw RankDeficientError("least-squares system is rank deficient");

  // Normal equations A^T A x = A^T b; SPD given full column rank.
  std::vector<std::vector<double>> ata(cols, std::vector<double>(cols, 0.0));
  std::vector<double> atb(cols, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int i = 0; i < cols; ++i) {
      if (s[r][i] == 0) continue;
      for (int j = 0; j < cols; ++j) ata[i][j] += s[r][i] * s[r][j];
      atb[i] += s[r][i] * b[r];
    }

  std::vector<double> x(cols, 0.0);
  for (int col = 0; col < cols; ++col) {
    int pivot = col;
    for (int r = col + 1; r < cols; ++r)
      if (std::abs(ata[r][col]) > std::abs(ata[pivot][col])) pivot = r;
    std::swap(ata[pivot], ata[col]);
    std::swap(atb[pivot], atb[col]);
    for (int r = col + 1; r < cols; ++r) {
      double f = ata[r][col] / ata[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < cols; ++c) ata[r][c] -= f * ata[col][c];
      atb[r] -= f * atb[col];
    }
  }
  for (int i = cols - 1; i >= 0; --i) {
    double acc = atb[i];
    for (int c = i + 1; c < cols; ++c) acc -= ata[i][c] * x[c];
    x[i] = acc / ata[i][i];
  }

  LeastSquaresResult out;
  out.candidate.offsets.assign(x.begin(), x.begin() + (n - 1));
  for (int i = 0; i < k; ++i) out.candidate.fault_estimates[assumed[i]] = x[(n - 1) + i];
  for (int r = 0; r < rows; ++r) {
    double acc = -b[r];
    for (int c = 0; c < cols; ++c)
      if (s[r][c] != 0) acc += s[r][c] * x[c];
    out.residuals[g.edges()[r]] = acc;
  }
  return out;
}

}  // namespace ncs
