#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hitchin/cks.hpp"
#include "hitchin/properties.hpp"
#include "hitchin/symgroup.hpp"

using namespace hitchin;

namespace {

// Derivation on a wedge monomial, written out factor by factor with sorted
// index lists; independent of the bitmask routine.
std::map<std::vector<int>, Integer> derivation_oracle(const OperatorColumns& op,
                                                      const std::vector<int>& monomial) {
  std::map<std::vector<int>, Integer> out;
  for (std::size_t t = 0; t < monomial.size(); ++t)
    for (const auto& [s, a] : op[static_cast<std::size_t>(monomial[t])]) {
      std::vector<int> w = monomial;
      w[t] = s;
      std::vector<int> sorted = w;
      if (std::set<int>(w.begin(), w.end()).size() != w.size()) continue;
      const int sign = sort_sign(sorted);
      out[sorted] += sign * a;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::vector<int> bits(std::uint64_t m) {
  std::vector<int> v;
  for (int i = 0; i < 64; ++i)
    if (m >> i & 1) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("exterior basis in colex order") {
  const ExteriorBasis b(5, 2);
  REQUIRE(b.size() == 10);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) REQUIRE(b.monomial(i) < b.monomial(i + 1));
  for (std::size_t i = 0; i < b.size(); ++i) REQUIRE(b.index(b.monomial(i)) == i);
  REQUIRE(ExteriorBasis(4, 5).size() == 0);
  REQUIRE(ExteriorBasis(4, 0).size() == 1);
  REQUIRE_THROWS_AS(ExteriorBasis(40, 20, 1000), Error);
}

TEST_CASE("derivation action agrees with the factorwise oracle") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const int dim = 3 + static_cast<int>(rng() % 6);
    const int deg = 1 + static_cast<int>(rng() % 3);
    OperatorColumns op(static_cast<std::size_t>(dim));
    for (auto& col : op) {
      for (int r = 0; r < dim; ++r)
        if (rng() % 3 == 0) col.emplace_back(r, Integer(static_cast<int>(rng() % 7) - 3));
      canonicalize(col);
    }
    const ExteriorBasis b(dim, deg);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto got = apply_derivation(op, b, {{static_cast<int>(i), Integer(1)}});
      std::map<std::vector<int>, Integer> as_map;
      for (const auto& [idx, v] : got) as_map[bits(b.monomial(static_cast<std::size_t>(idx)))] = v;
      REQUIRE(as_map == derivation_oracle(op, bits(b.monomial(i))));
    }
  }
}

TEST_CASE("graded model of two components in genus 2") {
  const auto model = GradedH1Model::from_partition(HitchinPartition(2, {1, 1}));
  REQUIRE(model.delta() == 1);
  REQUIRE(model.component_genera() == std::vector<int>{2, 2});
  REQUIRE(model.middle_dimension() == 8);
  REQUIRE(model.dimension() == 10);
  REQUIRE(model.arithmetic_genus() == 5);
}

TEST_CASE("Picard-Lefschetz operators") {
  const auto model = GradedH1Model::from_partition(HitchinPartition(2, {1, 1, 1}));
  for (int e : model.graph().labels()) {
    const auto n = picard_lefschetz(model, e);
    REQUIRE(multiply(n, n).is_zero());
    REQUIRE(fraction_free_rank(n) == 1);
    // Gr2 -> W0 only
    for (std::size_t c = 0; c < n.cols(); ++c)
      for (const auto& [r, v] : n.column(c)) {
        REQUIRE(model.weight(static_cast<int>(c)) == 2);
        REQUIRE(model.weight(r) == 0);
      }
  }
}

TEST_CASE("vanishing of Im N_I") {
  const auto r = property_vanishing({});
  INFO(r.counterexample);
  REQUIRE(r.passed);
  REQUIRE(r.cases > 0);
}

TEST_CASE("top-weight cohomology of the CKS complex") {
  const auto model = GradedH1Model::from_partition(HitchinPartition(2, {1, 1}));
  SECTION("i = 0 has no top-weight piece") {
    const auto h = cks_cohomology(build_cks(model, 0));
    for (auto d : h.top_weight_dims) REQUIRE(d == 0);
  }
  SECTION("i = 1") {
    const auto cx = build_cks(model, 1);
    REQUIRE(cx.verify_square_zero());
    const auto h = cks_cohomology(cx);
    REQUIRE(h.top_weight_dims.at(0) == 0);
    REQUIRE(h.top_weight_dims.at(1) == 1);
  }
  SECTION("i = 2") {
    const auto h = cks_cohomology(build_cks(model, 2));
    REQUIRE(h.top_weight_dims.at(0) == 0);
    REQUIRE(h.top_weight_dims.at(1) == 8);
  }
}

TEST_CASE("CKS invariants") {
  PropertyConfig cfg;
  cfg.trials = 60;
  for (auto* p : {&property_nilpotent, &property_cks_top_weight}) {
    const auto r = (*p)(cfg);
    INFO(r.name << ": " << r.counterexample);
    REQUIRE(r.passed);
  }
}

TEST_CASE("vertex swap acts by -1 on the top-weight CKS cohomology for n = 2") {
  for (int g = 2; g <= 3; ++g) {
    const auto model = GradedH1Model::from_partition(HitchinPartition(g, {1, 1}));
    const auto cx = build_cks(model, model.delta());
    const Permutation swap({1, 0});
    const auto edges = edge_action(swap, model.graph());
    const auto tr = top_weight_equivariant_trace(cx, swap.images(), edges);
    const Rational on_top = (model.delta() % 2 ? -1 : 1) * tr.lefschetz;
    REQUIRE(on_top == Rational(-1));
  }
}
