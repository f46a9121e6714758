#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hitchin/properties.hpp"
#include "hitchin/symgroup.hpp"

using namespace hitchin;

TEST_CASE("permutation arithmetic") {
  const auto a = Permutation::from_cycles(4, {{0, 1, 2}});
  const auto b = Permutation::from_cycles(4, {{2, 3}});
  REQUIRE((a * a.inverse()).images() == Permutation::identity(4).images());
  REQUIRE(a.power(3).images() == Permutation::identity(4).images());
  REQUIRE(a.cycle_type() == IntPartition{3, 1});
  REQUIRE(a.sign() == 1);
  REQUIRE(b.sign() == -1);
  REQUIRE((a * b).sign() == -1);
  REQUIRE_THROWS_AS(Permutation({0, 0, 1}), Error);
}

TEST_CASE("partitions and class sizes") {
  const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15};
  for (int n = 1; n <= 7; ++n) {
    const auto parts = integer_partitions(n);
    REQUIRE(parts.size() == p[static_cast<std::size_t>(n)]);
    REQUIRE(parts.front() == IntPartition(static_cast<std::size_t>(n), 1));
    Integer total = 0;
    for (const auto& t : parts) {
      total += class_size(t);
      REQUIRE(class_representative(t).cycle_type() == t);
    }
    REQUIRE(total == factorial(static_cast<std::uint64_t>(n)));
  }
  REQUIRE(partition_key({3, 1}) == "3+1");
}

TEST_CASE("class sizes match brute-force counts in S5") {
  std::vector<int> v{0, 1, 2, 3, 4};
  std::map<IntPartition, long long> counts;
  do {
    counts[Permutation(v).cycle_type()]++;
  } while (std::next_permutation(v.begin(), v.end()));
  for (const auto& [type, c] : counts) REQUIRE(class_size(type) == Integer(c));
}

TEST_CASE("random elements have the requested type") {
  std::mt19937_64 rng(1);
  for (const auto& t : integer_partitions(6))
    for (int i = 0; i < 5; ++i) REQUIRE(random_of_type(t, rng).cycle_type() == t);
}

TEST_CASE("induced character of a primitive cyclic character") {
  SECTION("r = 3 is the two-dimensional irreducible") {
    const auto chi = induced_character_oracle(3);
    REQUIRE(chi.value(IntPartition{1, 1, 1}) == 2);
    REQUIRE(chi.value(IntPartition{2, 1}) == 0);
    REQUIRE(chi.value(IntPartition{3}) == -1);
    REQUIRE(character_inner_product(chi, chi) == 1);
  }
  for (int r = 3; r <= 6; ++r) {
    const auto chi = induced_character_oracle(r);
    REQUIRE(chi.value(IntPartition(static_cast<std::size_t>(r), 1)) ==
            Rational(factorial(static_cast<std::uint64_t>(r - 1))));
    // values vanish off the classes meeting the cyclic subgroup
    for (const auto& t : integer_partitions(r)) {
      const bool uniform = std::all_of(t.begin(), t.end(), [&](int x) { return x == t[0]; });
      if (!uniform) REQUIRE(chi.value(t) == 0);
    }
  }
  REQUIRE(mobius(1) == 1);
  REQUIRE(mobius(6) == 1);
  REQUIRE(mobius(4) == 0);
  REQUIRE(mobius(5) == -1);
}

TEST_CASE("top-homology character equals the induced character") {
  for (int r = 3; r <= 5; ++r) {
    CharacterOptions oriented;
    oriented.twist = ActionTwist::Orientation;
    const auto oracle = induced_character_oracle(r);
    REQUIRE(top_homology_character(r) == oracle);
    REQUIRE(top_homology_character(r, oriented) == oracle);
    REQUIRE(partition_lattice_character(r) == oracle);
  }
  REQUIRE(top_homology_character(2).value(IntPartition{1, 1}) == 0);
}

TEST_CASE("sign twist and Young restriction") {
  const auto chi = induced_character_oracle(3);
  const auto twisted = twist_by_sign(chi);
  REQUIRE(twisted.value(IntPartition{2, 1}) == 0);
  REQUIRE(twisted.value(IntPartition{3}) == -1);
  REQUIRE(character_inner_product(sign_character(3), sign_character(3)) == 1);
  const auto res = restrict_to_young(chi, {2, 1});
  REQUIRE(res.factors == std::vector<int>{2, 1});
  REQUIRE(res.value(std::vector<IntPartition>{{1, 1}, {1}}) == 2);
  REQUIRE(res.value(std::vector<IntPartition>{{2}, {1}}) == 0);
  REQUIRE_THROWS_AS(restrict_to_young(chi, {2, 2}), Error);
}

TEST_CASE("orientation character of the n = 2 swap is -1") {
  for (int g = 2; g <= 4; ++g) {
    const auto graph = build_dual_graph(HitchinPartition(g, {1, 1}));
    REQUIRE(orientation_character(Permutation({1, 0}), graph) == -1);
  }
  REQUIRE(orientation_character(Permutation::from_cycles(4, {{0, 1}}), Multigraph::complete(4)) == 1);
}

TEST_CASE("class functions are constant on classes") {
  PropertyConfig cfg;
  const auto r = property_class_function(cfg);
  INFO(r.counterexample);
  REQUIRE(r.passed);
}
