#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "corpus.hpp"
#include "ncs/error.hpp"
#include "ncs/solvers.hpp"

using corpus::exact_round;
using ncs::Edge;
using ncs::FaultDistribution;
using ncs::MeasurementSet;
using ncs::NcsGraph;
using ncs::Rational;

namespace {

// Triangle round with one fault: truth (2, 5), fault -3 on (1,2). One fault
// on a 2-edge-connected graph is inherently ambiguous.
MeasurementSet ambiguous_triangle() {
  MeasurementSet m;
  m.values[Edge{0, 1}] = -2;
  m.values[Edge{0, 2}] = -5;
  m.values[Edge{1, 2}] = -6;
  return m;
}

// All fault distributions strictly smaller than `size`, as sorted edge lists.
std::vector<FaultDistribution> smaller_distributions(const NcsGraph& g, std::size_t size) {
  std::vector<FaultDistribution> out;
  const auto& edges = g.edges();
  const int e = g.edge_count();
  for (unsigned mask = 0; mask < (1u << e); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) >= size) continue;
    FaultDistribution d;
    for (int i = 0; i < e; ++i)
      if ((mask >> i) & 1u) d.push_back(edges[i]);
    out.push_back(std::move(d));
  }
  return out;
}

ncs::NoisyMeasurements to_doubles(const MeasurementSet& m) {
  ncs::NoisyMeasurements out;
  for (const auto& [e, v] : m.values) out[e] = static_cast<double>(v);
  return out;
}

}  // namespace

TEST_CASE("a single fault below the connectivity bound stays ambiguous") {
  NcsGraph tri = NcsGraph::complete(3);
  MeasurementSet m = ambiguous_triangle();

  auto r = ncs::ncs_exhaustive(tri, m);
  REQUIRE(r.has_value());
  CHECK(r->solution.offsets == corpus::rationals({"-1", "5"}));
  CHECK(r->assumed_distribution == FaultDistribution{Edge{0, 1}});
  CHECK(r->solution.fault_estimates.at(Edge{0, 1}) == -3);
  CHECK(r->iterations_examined == 2);

  try {
    ncs::ncs_fast(tri, m);
    FAIL("expected a vote tie");
  } catch (const ncs::VoteTieError& e) {
    CHECK(e.node() == 1);
  }
}

TEST_CASE("clean rounds are solved in one step by both solvers") {
  ncs::Rng rng(31);
  for (const auto& g : corpus::corpus_n6()) {
    std::vector<Rational> truth;
    for (int v = 1; v < g.node_count(); ++v)
      truth.push_back(Rational(static_cast<long>(rng.below(19)) - 9));
    auto m = exact_round(g, truth, {});

    auto ex = ncs::ncs_exhaustive(g, m);
    REQUIRE(ex.has_value());
    CHECK(ex->solution.offsets == truth);
    CHECK(ex->assumed_distribution.empty());
    CHECK(ex->iterations_examined == 1);

    auto fast = ncs::ncs_fast(g, m);
    CHECK(fast.solution.offsets == truth);
    CHECK(fast.solution.fault_estimates.empty());
    CHECK(fast.assumed_distribution.empty());
  }
}

TEST_CASE("one fault is corrected on every edge of a 3-connected graph") {
  const NcsGraph& g = corpus::incomplete_n5();
  auto truth = corpus::rationals({"3", "-1", "7/2", "2"});
  for (const auto& e : g.edges()) {
    Rational f(-6);
    auto m = exact_round(g, truth, {{e, f}});

    auto ex = ncs::ncs_exhaustive(g, m);
    REQUIRE(ex.has_value());
    CHECK(ex->solution.offsets == truth);
    CHECK(ex->assumed_distribution == FaultDistribution{e});
    CHECK(ex->solution.fault_estimates.at(e) == f);

    auto fast = ncs::ncs_fast(g, m);
    CHECK(fast.solution.offsets == truth);
    REQUIRE(fast.solution.fault_estimates.size() == 1);
    CHECK(fast.solution.fault_estimates.at(e) == f);
  }
}

TEST_CASE("both solvers agree on single faults across the corpus") {
  ncs::Rng rng(52);
  for (const auto& g : corpus::corpus_n6()) {
    if (ncs::edge_connectivity(g) < 3) continue;   // below the 1-fault bound
    for (int round = 0; round < 2; ++round) {
      std::vector<Rational> truth;
      for (int v = 1; v < g.node_count(); ++v)
        truth.push_back(Rational(static_cast<long>(rng.below(41)) - 20) / Rational(2));
      for (const auto& e : g.edges()) {
        Rational f = Rational(static_cast<long>(rng.below(9)) + 1) *
                     (rng.below(2) ? Rational(1) : Rational(-1));
        auto m = exact_round(g, truth, {{e, f}});
        auto ex = ncs::ncs_exhaustive(g, m);
        REQUIRE(ex.has_value());
        auto fast = ncs::ncs_fast(g, m);
        CHECK(ex->solution.offsets == fast.solution.offsets);
        CHECK(ex->solution.fault_estimates == fast.solution.fault_estimates);
        CHECK(ex->assumed_distribution == fast.assumed_distribution);
        CHECK(ex->solution.offsets == truth);
      }
    }
  }
}

TEST_CASE("two equal faults sharing a node defeat both solvers the same way") {
  // Truth (1,2,3) with -4 on (0,1) and (0,2): consistent with a single +4
  // fault on (0,3) under offsets (5,6,7), which both solvers prefer.
  NcsGraph k4 = NcsGraph::complete(4);
  MeasurementSet m;
  m.values[Edge{0, 1}] = -5;
  m.values[Edge{0, 2}] = -6;
  m.values[Edge{0, 3}] = -3;
  m.values[Edge{1, 2}] = -1;
  m.values[Edge{1, 3}] = -2;
  m.values[Edge{2, 3}] = -1;

  auto wrong = corpus::rationals({"5", "6", "7"});
  auto ex = ncs::ncs_exhaustive(k4, m);
  REQUIRE(ex.has_value());
  CHECK(ex->solution.offsets == wrong);
  CHECK(ex->assumed_distribution == FaultDistribution{Edge{0, 3}});
  CHECK(ex->solution.fault_estimates.at(Edge{0, 3}) == 4);
  CHECK(ex->iterations_examined == 4);

  auto fast = ncs::ncs_fast(k4, m);
  CHECK(fast.solution.offsets == wrong);
  CHECK(fast.assumed_distribution == FaultDistribution{Edge{0, 3}});
  CHECK(fast.solution.fault_estimates.at(Edge{0, 3}) == 4);
  CHECK(fast.iterations_examined == 9);
}

TEST_CASE("unequal fault values break the coincidence and restore the truth") {
  NcsGraph k4 = NcsGraph::complete(4);
  MeasurementSet m;
  m.values[Edge{0, 1}] = -5;   // truth (1,2,3), fault -4
  m.values[Edge{0, 2}] = -9;   // fault -7
  m.values[Edge{0, 3}] = -3;
  m.values[Edge{1, 2}] = -1;
  m.values[Edge{1, 3}] = -2;
  m.values[Edge{2, 3}] = -1;

  auto ex = ncs::ncs_exhaustive(k4, m);
  REQUIRE(ex.has_value());
  CHECK(ex->solution.offsets == corpus::rationals({"1", "2", "3"}));
  CHECK(ex->assumed_distribution == FaultDistribution{Edge{0, 1}, Edge{0, 2}});
  CHECK(ex->solution.fault_estimates.at(Edge{0, 1}) == -4);
  CHECK(ex->solution.fault_estimates.at(Edge{0, 2}) == -7);
  CHECK(ex->iterations_examined == 8);
}

TEST_CASE("two faults can admit a smaller consistent wrong distribution") {
  NcsGraph k4 = NcsGraph::complete(4);
  MeasurementSet m;   // truth (3,-2,5), faults (0,1) -> -4 and (0,2) -> -7
  m.values[Edge{0, 1}] = -7;
  m.values[Edge{0, 2}] = -5;
  m.values[Edge{0, 3}] = -5;
  m.values[Edge{1, 2}] = 5;
  m.values[Edge{1, 3}] = -2;
  m.values[Edge{2, 3}] = -7;

  auto ex = ncs::ncs_exhaustive(k4, m);
  REQUIRE(ex.has_value());
  CHECK(ex->solution.offsets == corpus::rationals({"3", "-2", "5"}));
  CHECK(ex->assumed_distribution == FaultDistribution{Edge{0, 1}, Edge{0, 2}});
  CHECK(ex->iterations_examined == 8);
  CHECK_THROWS_AS(ncs::ncs_fast(k4, m), ncs::VoteTieError);
}

TEST_CASE("on a 4-connected graph two tuned faults tie the vote but not the search") {
  NcsGraph k5 = NcsGraph::complete(5);
  auto truth = corpus::rationals({"1", "2", "3", "4"});
  std::map<Edge, Rational> faults{{Edge{0, 1}, Rational(-6)}, {Edge{1, 4}, Rational(6)}};
  auto m = exact_round(k5, truth, faults);

  auto ex = ncs::ncs_exhaustive(k5, m);
  REQUIRE(ex.has_value());
  CHECK(ex->solution.offsets == truth);
  CHECK(ex->assumed_distribution == FaultDistribution{Edge{0, 1}, Edge{1, 4}});
  CHECK(ex->iterations_examined == 17);

  try {
    ncs::ncs_fast(k5, m);
    FAIL("expected a vote tie");
  } catch (const ncs::VoteTieError& e) {
    CHECK(e.node() == 1);
  }

  // Detuning one value separates the corrupted votes and the plurality holds.
  faults[Edge{1, 4}] = 11;
  auto m2 = exact_round(k5, truth, faults);
  auto fast = ncs::ncs_fast(k5, m2);
  CHECK(fast.solution.offsets == truth);
  CHECK(fast.solution.fault_estimates.at(Edge{0, 1}) == -6);
  CHECK(fast.solution.fault_estimates.at(Edge{1, 4}) == 11);

  // Both wrong votes positive-side: singleton counts precede the winner in
  // value order, which must not register as a tie.
  std::map<Edge, Rational> pos{{Edge{0, 1}, Rational(6)}, {Edge{1, 4}, Rational(11)}};
  auto m3 = exact_round(k5, truth, pos);
  CHECK(ncs::ncs_fast(k5, m3).solution.offsets == truth);
}

TEST_CASE("any two faults on the complete 7-node graph are corrected") {
  NcsGraph k7 = NcsGraph::complete(7);
  auto truth = corpus::rationals({"1", "2", "3", "4", "5", "6"});
  const auto& edges = k7.edges();
  ncs::Rng rng(99);

  int pair_index = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j, ++pair_index) {
      auto draw = [&rng] {
        return Rational(static_cast<long>(rng.below(8)) + 1) *
               (rng.below(2) ? Rational(1) : Rational(-1));
      };
      std::map<Edge, Rational> faults{{edges[i], draw()}, {edges[j], draw()}};
      auto m = exact_round(k7, truth, faults);

      auto fast = ncs::ncs_fast(k7, m);
      CHECK(fast.solution.offsets == truth);
      CHECK(std::map<Edge, Rational>(fast.solution.fault_estimates) == faults);

      if (pair_index % 11 == 0) {
        auto ex = ncs::ncs_exhaustive(k7, m);
        REQUIRE(ex.has_value());
        CHECK(ex->solution.offsets == truth);
        CHECK(ex->assumed_distribution == FaultDistribution{edges[i], edges[j]});
      }
    }
  }
  CHECK(pair_index == 210);
}

TEST_CASE("the returned distribution is smallest possible and all estimates are nonzero") {
  ncs::Rng rng(140);
  for (const auto& g : corpus::corpus_n5()) {
    for (int k_true = 0; k_true <= 2; ++k_true) {
      if (k_true > g.edge_count()) continue;
      std::vector<Rational> truth;
      for (int v = 1; v < g.node_count(); ++v)
        truth.push_back(Rational(static_cast<long>(rng.below(15)) - 7));
      std::map<Edge, Rational> faults;
      for (int idx : rng.sample_indices(g.edge_count(), k_true))
        faults[g.edges()[idx]] = Rational(static_cast<long>(rng.below(6)) + 2);
      auto m = exact_round(g, truth, faults);

      auto r = ncs::ncs_exhaustive(g, m);
      REQUIRE(r.has_value());
      for (const auto& [e, est] : r->solution.fault_estimates) CHECK(est != 0);
      for (const auto& d : smaller_distributions(g, r->assumed_distribution.size())) {
        auto out = ncs::solve_system(ncs::build_system(g, m, d));
        CHECK(out.status != ncs::SolveStatus::Unique);
      }
    }
  }
}

TEST_CASE("fault detection reports defects exactly on the perturbed edges") {
  const NcsGraph& g = corpus::incomplete_n6_a();
  auto truth = corpus::rationals({"1", "-2", "3", "0", "5"});
  std::map<Edge, Rational> faults{{Edge{1, 4}, Rational(9)}, {Edge{2, 5}, *ncs::parse_rational("-7/2")}};
  auto m = exact_round(g, truth, faults);
  CHECK(ncs::detect_faults(g, m, truth) == faults);
  CHECK(ncs::detect_faults(g, exact_round(g, truth, {}), truth).empty());
  CHECK_THROWS_AS(ncs::detect_faults(g, m, {Rational(1)}), std::invalid_argument);
}

TEST_CASE("offsets shifted on one side of a cut show defects exactly on the cut") {
  ncs::Rng rng(253);
  int exercised = 0;
  for (const auto& g : corpus::random_corpus_n8()) {
    if (exercised == 25) break;
    ++exercised;
    auto w = ncs::edge_connectivity_witness(g);
    std::vector<Rational> truth, shifted;
    for (int v = 1; v < g.node_count(); ++v)
      truth.push_back(Rational(static_cast<long>(rng.below(21)) - 10));
    shifted = truth;
    Rational c = *ncs::parse_rational("7/3");
    for (int v = 1; v < g.node_count(); ++v)
      if (!corpus::oracle_reachable_without(g, 0, v, w.cut)) shifted[v - 1] += c;

    auto m = exact_round(g, truth, {});
    auto defects = ncs::detect_faults(g, m, shifted);
    REQUIRE(defects.size() == w.cut.size());
    for (const auto& e : w.cut) {
      REQUIRE(defects.count(e));
      bool a_near = e.a == 0 || corpus::oracle_reachable_without(g, 0, e.a, w.cut);
      CHECK(defects.at(e) == (a_near ? c : -c));
    }
  }
}

TEST_CASE("solvers validate their inputs") {
  NcsGraph split(4, {Edge{0, 1}, Edge{2, 3}});
  MeasurementSet m;
  m.values[Edge{0, 1}] = 1;
  m.values[Edge{2, 3}] = 1;
  CHECK(!ncs::ncs_exhaustive(split, m).has_value());
  CHECK_THROWS_AS(ncs::ncs_fast(split, m), std::invalid_argument);

  NcsGraph tri = NcsGraph::complete(3);
  MeasurementSet short_m;
  short_m.values[Edge{0, 1}] = 1;
  CHECK_THROWS_AS(ncs::ncs_exhaustive(tri, short_m), std::invalid_argument);
  CHECK_THROWS_AS(ncs::ncs_fast(tri, short_m), std::invalid_argument);
}

TEST_CASE("noisy exhaustive search accepts the true distribution on clean data") {
  NcsGraph k4 = NcsGraph::complete(4);
  auto truth = corpus::rationals({"1", "2", "3"});
  auto clean = to_doubles(exact_round(k4, truth, {}));

  auto base = ncs::ncs_exhaustive_noisy(k4, clean, 2.0);
  CHECK(base.accepted);
  CHECK(base.assumed_distribution.empty());
  CHECK(base.iterations_examined == 1);
  for (int j = 0; j < 3; ++j) CHECK(base.solution.offsets[j] == doctest::Approx(j + 1.0));

  auto faulted = clean;
  faulted[Edge{0, 2}] += 6.25;
  auto r = ncs::ncs_exhaustive_noisy(k4, faulted, 2.0);
  CHECK(r.accepted);
  CHECK(r.assumed_distribution == FaultDistribution{Edge{0, 2}});
  CHECK(r.solution.fault_estimates.at(Edge{0, 2}) == doctest::Approx(6.25));
  for (int j = 0; j < 3; ++j) CHECK(r.solution.offsets[j] == doctest::Approx(j + 1.0));
}

TEST_CASE("an unsatisfiable residual threshold falls back to the base fit") {
  NcsGraph tri = NcsGraph::complete(3);
  ncs::NoisyMeasurements m{{Edge{0, 1}, 0.3}, {Edge{0, 2}, -0.7}, {Edge{1, 2}, 1.1}};
  auto r = ncs::ncs_exhaustive_noisy(tri, m, -1.0);
  CHECK(!r.accepted);
  CHECK(r.assumed_distribution.empty());
  CHECK(r.iterations_examined == 8);   // every subset of three edges examined
  auto base = ncs::residual_least_squares(tri, m, {});
  CHECK(r.solution.offsets == base.candidate.offsets);

  NcsGraph split(4, {Edge{0, 1}, Edge{2, 3}});
  ncs::NoisyMeasurements ms{{Edge{0, 1}, 1.0}, {Edge{2, 3}, 1.0}};
  CHECK_THROWS_AS(ncs::ncs_exhaustive_noisy(split, ms, 2.0), ncs::RankDeficientError);
}

TEST_CASE("noisy voting matches exact voting on clean rounds") {
  const NcsGraph& g = corpus::incomplete_n5();
  auto truth = corpus::rationals({"2", "-3", "1", "4"});
  auto m = exact_round(g, truth, {{Edge{2, 4}, Rational(5)}});
  auto exact = ncs::ncs_fast(g, m);
  auto noisy = ncs::ncs_fast_noisy(g, to_doubles(m), 2.0);
  CHECK(noisy.accepted);
  REQUIRE(noisy.solution.offsets.size() == exact.solution.offsets.size());
  for (std::size_t j = 0; j < noisy.solution.offsets.size(); ++j)
    CHECK(noisy.solution.offsets[j] ==
          doctest::Approx(static_cast<double>(exact.solution.offsets[j])));
  CHECK(noisy.assumed_distribution == exact.assumed_distribution);
  CHECK(noisy.solution.fault_estimates.at(Edge{2, 4}) == doctest::Approx(5.0));
}

TEST_CASE("cluster selection prefers larger windows, then smaller values") {
  // Ring with one oversized fault: each node sees one clean and one corrupted
  // vote, the scan keeps the smaller singleton, and the defect lands on the
  // far edge of the ring rather than the injected one.
  NcsGraph c4 = NcsGraph::cycle(4);
  std::vector<double> truth{1.0, 1.0, 1.0};
  auto m = ncs::generate_round(c4, truth, {{Edge{0, 1}, 6.0}}, ncs::NoiseModel{0.0}, 5);
  auto r = ncs::ncs_fast_noisy(c4, m, 2.0);
  for (int j = 0; j < 3; ++j) CHECK(r.solution.offsets[j] == doctest::Approx(-5.0));
  REQUIRE(r.assumed_distribution == FaultDistribution{Edge{0, 3}});
  CHECK(r.solution.fault_estimates.at(Edge{0, 3}) == doctest::Approx(-6.0));

  // A fault within the window is averaged away instead: clusters of size two
  // use the midpoint and no defect clears the threshold.
  auto soft = ncs::generate_round(c4, truth, {{Edge{0, 1}, 1.0}}, ncs::NoiseModel{0.0}, 5);
  auto s = ncs::ncs_fast_noisy(c4, soft, 2.0);
  for (int j = 0; j < 3; ++j) CHECK(s.solution.offsets[j] == doctest::Approx(0.5));
  CHECK(s.solution.fault_estimates.empty());
}
