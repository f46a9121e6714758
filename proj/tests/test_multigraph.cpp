#include <catch2/catch_amalgamated.hpp>

#include <queue>
#include <random>

#include "hitchin/multigraph.hpp"
#include "hitchin/properties.hpp"

using namespace hitchin;

namespace {

// Breadth-first component count over an adjacency list.
int bfs_components(const Multigraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<bool> seen(adj.size(), false);
  int comps = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (seen[s]) continue;
    ++comps;
    std::queue<int> q;
    q.push(static_cast<int>(s));
    seen[s] = true;
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int y : adj[static_cast<std::size_t>(x)])
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          q.push(y);
        }
    }
  }
  return comps;
}

}  // namespace

TEST_CASE("component counts agree with breadth-first search") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int v = 1 + static_cast<int>(rng() % 6);
    std::vector<std::pair<int, int>> pairs;
    const int e = static_cast<int>(rng() % 8);
    for (int i = 0; i < e; ++i)
      pairs.emplace_back(static_cast<int>(rng() % v), static_cast<int>(rng() % v));
    const auto g = Multigraph::from_pairs(v, pairs);
    REQUIRE(g.component_count() == bfs_components(g));
    CellSet removed;
    for (int i = 0; i < e; ++i)
      if (rng() % 2) removed.insert(i);
    std::vector<std::pair<int, int>> rest;
    for (int i = 0; i < e; ++i)
      if (!removed.contains(i)) rest.push_back(pairs[static_cast<std::size_t>(i)]);
    REQUIRE(g.component_count_without(removed) == bfs_components(Multigraph::from_pairs(v, rest)));
  }
}

TEST_CASE("invalid graphs are rejected") {
  REQUIRE_THROWS_AS(Multigraph(0, {}), Error);
  REQUIRE_THROWS_AS(Multigraph(2, {{0, 2, 0}}), Error);
  REQUIRE_THROWS_AS(Multigraph(2, {{0, 1, 3}, {1, 0, 3}}), Error);
}

TEST_CASE("dual graphs of generic spectral curves") {
  SECTION("two components in genus 2") {
    const auto g = build_dual_graph(HitchinPartition(2, {1, 1}));
    REQUIRE(g.vertex_count() == 2);
    REQUIRE(g.edge_count() == 2);
    REQUIRE(delta_aff(g) == 1);
  }
  SECTION("three components in genus 2") {
    const auto g = build_dual_graph(HitchinPartition(2, {1, 1, 1}));
    REQUIRE(g.vertex_count() == 3);
    REQUIRE(g.multiplicity(0, 1) == 2);
    REQUIRE(g.multiplicity(1, 2) == 2);
    REQUIRE(g.multiplicity(0, 2) == 2);
    REQUIRE(delta_aff(g) == 4);
  }
  SECTION("edge multiplicity n_i n_j (2g - 2)") {
    const auto g = build_dual_graph(HitchinPartition(3, {3, 2, 1}));
    REQUIRE(g.multiplicity(0, 1) == 24);
    REQUIRE(g.multiplicity(0, 2) == 12);
    REQUIRE(g.multiplicity(1, 2) == 8);
  }
  SECTION("the trivial partition is a single vertex") {
    const auto g = build_dual_graph(HitchinPartition(2, {3}));
    REQUIRE(g.vertex_count() == 1);
    REQUIRE(g.edge_count() == 0);
    REQUIRE(delta_aff(g) == 0);
  }
  REQUIRE_THROWS_AS(HitchinPartition(1, {1, 1}), Error);
  REQUIRE_THROWS_AS(HitchinPartition(2, {1, 2}), Error);
  REQUIRE_THROWS_AS(HitchinPartition(2, {0}), Error);
  REQUIRE(HitchinPartition::sorted(2, {1, 2}).parts() == std::vector<int>{2, 1});
}

TEST_CASE("contraction merges endpoints and keeps other labels") {
  const auto g = Multigraph::from_pairs(3, {{0, 1}, {1, 2}, {0, 2}, {1, 2}});
  const auto c = contract_edge(g, 1);
  REQUIRE(c.vertex_count() == 2);
  REQUIRE(c.labels() == std::vector<int>{0, 2, 3});
  REQUIRE(c.multiplicity(0, 1) == 2);
  REQUIRE(c.multiplicity(1, 1) == 1);  // the parallel copy becomes a loop
  REQUIRE(delta_aff(c) == delta_aff(g));
}

TEST_CASE("doubling adds parallel copies with fresh labels") {
  const auto g = Multigraph::from_pairs(2, {{0, 1}, {0, 1}});
  const auto d = double_edges(g, {1});
  REQUIRE(d.graph.edge_count() == 3);
  REQUIRE(d.copy_of.at(1) == 2);
  REQUIRE(delta_aff(d.graph) == delta_aff(g) + 1);
}

TEST_CASE("cycle basis: two parallel edges give e1 - e0") {
  const auto g = Multigraph::from_pairs(2, {{0, 1}, {0, 1}});
  const auto b = cycle_space(g);
  REQUIRE(b.chord_labels == std::vector<int>{1});
  REQUIRE(b.cycles == std::vector<std::vector<int>>{{-1, 1}});
  const auto flipped = cycle_space(g, {0});
  REQUIRE(flipped.cycles == std::vector<std::vector<int>>{{1, 1}});
  REQUIRE(std::all_of(chain_boundary(g, flipped.cycles[0], flipped.orientation).begin(),
                      chain_boundary(g, flipped.cycles[0], flipped.orientation).end(),
                      [](int x) { return x == 0; }));
}

TEST_CASE("graph properties hold on random samples") {
  PropertyConfig cfg;
  cfg.trials = 150;
  for (auto* p : {&property_delta_formula, &property_delta_relabel, &property_contract_delete,
                  &property_cycle_space}) {
    const auto r = (*p)(cfg);
    INFO(r.name << ": " << r.counterexample);
    REQUIRE(r.passed);
    REQUIRE(r.cases > 0);
  }
}
