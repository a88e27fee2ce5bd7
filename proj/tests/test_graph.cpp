#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "corpus.hpp"
#include "ncs/graph.hpp"
#include "ncs/sim.hpp"

using corpus::from_pairs;
using ncs::Edge;
using ncs::NcsGraph;
using ncs::NodeId;

namespace {

// Every graph the structural property tests sweep over.
std::vector<NcsGraph> all_connected_graphs() {
  std::vector<NcsGraph> gs = corpus::corpus_n6();
  const auto& extra = corpus::random_corpus_n8();
  gs.insert(gs.end(), extra.begin(), extra.end());
  return gs;
}

void check_paths_valid(const NcsGraph& g, NodeId s, NodeId t, const ncs::DisjointPaths& dp) {
  REQUIRE(static_cast<int>(dp.paths.size()) == dp.count);
  std::set<Edge> used;
  for (const auto& path : dp.paths) {
    REQUIRE(path.size() >= 2);
    CHECK(path.front() == s);
    CHECK(path.back() == t);
    std::set<NodeId> visited(path.begin(), path.end());
    CHECK(visited.size() == path.size());   // simple path
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      Edge e = ncs::make_edge(path[i], path[i + 1]);
      CHECK(g.has_edge(e.a, e.b));
      CHECK(!used.count(e));   // edge-disjoint across paths
      used.insert(e);
    }
  }
}

}  // namespace

TEST_CASE("edges are canonical and reject degenerate input") {
  Edge e = ncs::make_edge(3, 1);
  CHECK(e.a == 1);
  CHECK(e.b == 3);
  CHECK(ncs::make_edge(1, 3) == e);
  CHECK(ncs::to_string(e) == "(1,3)");
  CHECK_THROWS_AS(ncs::make_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(ncs::make_edge(-1, 2), std::invalid_argument);
}

TEST_CASE("graph construction validates its edge list") {
  CHECK_THROWS_AS(NcsGraph(3, {Edge{0, 1}, Edge{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(NcsGraph(3, {Edge{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(NcsGraph(-1, {}), std::invalid_argument);

  // Unordered pairs are canonicalized and sorted.
  NcsGraph g(4, {Edge{3, 0}, Edge{2, 1}});
  CHECK(g.edges() == std::vector<Edge>{Edge{0, 3}, Edge{1, 2}});
  CHECK(g.has_edge(3, 0));
  CHECK(!g.has_edge(0, 1));
  CHECK(!g.has_edge(2, 2));
}

TEST_CASE("standard builders produce the expected shapes") {
  NcsGraph k5 = NcsGraph::complete(5);
  CHECK(k5.edge_count() == 10);
  CHECK(k5.min_degree() == 4);

  NcsGraph c4 = NcsGraph::cycle(4);
  CHECK(c4.edge_count() == 4);
  for (NodeId v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);

  NcsGraph s5 = NcsGraph::star(5);
  CHECK(s5.edge_count() == 4);
  CHECK(s5.degree(0) == 4);
  CHECK(s5.degree(3) == 1);
  CHECK(s5.min_degree() == 1);

  NcsGraph p4 = NcsGraph::path(4);
  CHECK(p4.edge_count() == 3);
  CHECK(p4.degree(0) == 1);
  CHECK(p4.degree(1) == 2);

  CHECK_THROWS_AS(NcsGraph::cycle(2), std::invalid_argument);
  CHECK_THROWS_AS(NcsGraph::star(1), std::invalid_argument);
  CHECK_THROWS_AS(NcsGraph::complete(0), std::invalid_argument);
  CHECK_THROWS_AS(k5.degree(5), std::invalid_argument);
}

TEST_CASE("adjacency lists mirror the edge list") {
  const NcsGraph& g = corpus::incomplete_n6_a();
  auto adj = g.adjacency();
  REQUIRE(static_cast<int>(adj.size()) == g.node_count());
  int half_edges = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    CHECK(std::is_sorted(adj[u].begin(), adj[u].end()));
    CHECK(static_cast<int>(adj[u].size()) == g.degree(u));
    for (NodeId v : adj[u]) {
      CHECK(g.has_edge(u, v));
      ++half_edges;
    }
  }
  CHECK(half_edges == 2 * g.edge_count());
}

TEST_CASE("connectivity predicate agrees with a disjoint-set oracle") {
  for (const auto& g : all_connected_graphs()) {
    CHECK(ncs::is_connected(g));
    CHECK(corpus::oracle_connected(g));
  }
  for (const auto& g : corpus::disconnected_fixtures()) {
    CHECK(!ncs::is_connected(g));
    CHECK(!corpus::oracle_connected(g));
  }
}

TEST_CASE("connectivity after removal matches recomputing from scratch") {
  ncs::Rng rng(4242);
  for (const auto& g : corpus::random_corpus_n8()) {
    if (g.edge_count() == 0) continue;
    int how_many = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.edge_count()) + 1));
    auto pick = rng.sample_indices(g.edge_count(), how_many);
    std::vector<Edge> removed;
    for (int i : pick) removed.push_back(g.edges()[i]);
    bool expect = true;
    for (NodeId v = 1; v < g.node_count() && expect; ++v)
      expect = corpus::oracle_reachable_without(g, 0, v, removed);
    CHECK(ncs::is_connected_after_removal(g, removed) == expect);
  }

  NcsGraph tri = NcsGraph::cycle(3);
  CHECK_THROWS_AS(ncs::is_connected_after_removal(tri, {Edge{0, 1}, Edge{0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)ncs::is_connected_after_removal(NcsGraph(4, {Edge{0, 1}}), {Edge{2, 3}}),
                  std::invalid_argument);
}

TEST_CASE("disjoint path counts equal the bipartition oracle") {
  for (const auto& g : all_connected_graphs()) {
    for (NodeId t = 1; t < g.node_count(); ++t) {
      auto dp = ncs::max_edge_disjoint_paths(g, 0, t);
      CHECK(dp.count == corpus::oracle_local_edge_connectivity(g, 0, t));
      check_paths_valid(g, 0, t, dp);
    }
  }
  CHECK_THROWS_AS(ncs::max_edge_disjoint_paths(NcsGraph::cycle(3), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ncs::max_edge_disjoint_paths(NcsGraph::cycle(3), 0, 3), std::invalid_argument);
}

TEST_CASE("disjoint paths exist in disconnected graphs only within a component") {
  NcsGraph g = from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  CHECK(ncs::max_edge_disjoint_paths(g, 0, 1).count == 2);
  CHECK(ncs::max_edge_disjoint_paths(g, 0, 4).count == 0);
  CHECK(ncs::max_edge_disjoint_paths(g, 0, 4).paths.empty());
}

TEST_CASE("minimum cuts separate the pair and match the path count") {
  for (const auto& g : all_connected_graphs()) {
    for (NodeId t = 1; t < g.node_count(); ++t) {
      auto cut = ncs::min_edge_cut(g, 0, t);
      CHECK(static_cast<int>(cut.size()) == corpus::oracle_local_edge_connectivity(g, 0, t));
      for (const auto& e : cut) CHECK(g.has_edge(e.a, e.b));
      CHECK(!corpus::oracle_reachable_without(g, 0, t, cut));
    }
  }
}

TEST_CASE("global connectivity witness equals the bipartition oracle") {
  for (const auto& g : all_connected_graphs()) {
    auto w = ncs::edge_connectivity_witness(g);
    int expect = corpus::oracle_edge_connectivity(g);
    CHECK(w.lambda == expect);
    CHECK(ncs::edge_connectivity(g) == expect);
    CHECK(static_cast<int>(w.cut.size()) == w.lambda);
    CHECK(!ncs::is_connected_after_removal(g, w.cut));
    CHECK(w.lambda <= g.min_degree());
  }
  for (const auto& g : corpus::disconnected_fixtures()) {
    if (g.node_count() < 2) continue;
    auto w = ncs::edge_connectivity_witness(g);
    CHECK(w.lambda == 0);
    CHECK(w.cut.empty());
  }
  CHECK_THROWS_AS(ncs::edge_connectivity_witness(NcsGraph(1, {})), std::invalid_argument);
}

TEST_CASE("named fixtures have the pinned connectivity values") {
  CHECK(ncs::edge_connectivity(corpus::incomplete_n5()) == 3);
  CHECK(ncs::edge_connectivity(corpus::incomplete_n6_a()) == 3);
  CHECK(ncs::edge_connectivity(corpus::incomplete_n6_b()) == 4);
  CHECK(ncs::edge_connectivity(corpus::incomplete_n7_a()) == 3);
  CHECK(ncs::edge_connectivity(corpus::incomplete_n7_b()) == 5);
  CHECK(ncs::edge_connectivity(corpus::incomplete_n8()) == 5);
  CHECK(ncs::edge_connectivity(corpus::min_n5_k1()) == 3);
  CHECK(ncs::edge_connectivity(corpus::min_n6_k1()) == 3);

  CHECK(corpus::incomplete_n8().edge_count() == 24);
  CHECK(corpus::incomplete_n8().min_degree() == 5);
}

TEST_CASE("connectivity queries are deterministic") {
  const NcsGraph& g = corpus::incomplete_n8();
  auto w1 = ncs::edge_connectivity_witness(g);
  auto w2 = ncs::edge_connectivity_witness(g);
  CHECK(w1.lambda == w2.lambda);
  CHECK(w1.cut == w2.cut);
  auto p1 = ncs::max_edge_disjoint_paths(g, 0, 7);
  auto p2 = ncs::max_edge_disjoint_paths(g, 0, 7);
  CHECK(p1.paths == p2.paths);
}
