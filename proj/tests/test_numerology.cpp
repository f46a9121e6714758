#include <catch2/catch_amalgamated.hpp>

#include "hitchin/numerology.hpp"
#include "hitchin/properties.hpp"

using namespace hitchin;

TEST_CASE("dimensions of the base and of the moduli space") {
  REQUIRE(dim_hitchin_base(2, 2) == 5);
  REQUIRE(dim_moduli(2, 2) == 10);
  REQUIRE(dim_hitchin_base(3, 4) == 28);
}

TEST_CASE("report for two components in genus 2") {
  const HitchinPartition p(2, {1, 1});
  const auto r = support_report(p);
  REQUIRE(r.delta_aff == 1);
  REQUIRE(r.perversity_min == 1);
  REQUIRE(r.perversity_max == 9);
  REQUIRE(r.codim_S == 1);
  REQUIRE(r.normalized_h1 == 8);
  REQUIRE(r.component_genera == std::vector<int>{2, 2});
  REQUIRE(r.arithmetic_genus == 5);
  REQUIRE(r.top_rank == 1);
  REQUIRE_FALSE(r.constant_monodromy);
  REQUIRE(r.monodromy_group_order == 2);
  for (long long perv = 1; perv <= 9; ++perv)
    REQUIRE(r.local_system_ranks.at(perv) == binomial_big(8, static_cast<std::uint64_t>(perv - 1)));
  REQUIRE(r.verified());
}

TEST_CASE("the trivial partition has no new stratum") {
  const auto r = support_report(HitchinPartition(2, {3}));
  REQUIRE(r.delta_aff == 0);
  REQUIRE(r.codim_S == 0);
  REQUIRE(r.k == 1);
  REQUIRE(r.verified());
}

TEST_CASE("homology verification of top rank for three components") {
  ReportOptions opt;
  opt.verify = VerifyLevel::Homology;
  const auto r = support_report(HitchinPartition(2, {1, 1, 1}), opt);
  REQUIRE(r.top_rank == 2);
  REQUIRE(r.verified());
  REQUIRE(r.stalk_method == "homology");
}

TEST_CASE("local-system ranks equal (k-1)! C(2(dim A - delta), i)") {
  for (int g = 2; g <= 4; ++g)
    for (const auto& parts : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 1}, {2, 1, 1}}) {
      const HitchinPartition p(g, parts);
      const long long delta = delta_aff_formula(p);
      const long long h = 2 * (dim_hitchin_base(p.n(), g) - delta);
      REQUIRE(normalized_h1(p) == h);
      for (long long i = 0; i <= h; ++i)
        REQUIRE(local_system_rank(p, i) ==
                factorial(static_cast<std::uint64_t>(p.k() - 1)) *
                    binomial_big(static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(i)));
      REQUIRE_THROWS_AS(local_system_rank(p, h + 1), Error);
    }
}

TEST_CASE("monodromy group is the Young subgroup") {
  REQUIRE(monodromy_group_order(HitchinPartition(2, {2, 2, 1, 1, 1})) == 12);
  REQUIRE(constant_monodromy(HitchinPartition(2, {3, 2, 1})));
  REQUIRE_FALSE(constant_monodromy(HitchinPartition(2, {2, 2})));
}

TEST_CASE("doubling reduction of parallel classes") {
  const auto red = doubling_reduce(build_dual_graph(HitchinPartition(2, {1, 1, 1})));
  REQUIRE(red.reduced.edge_count() == 3);
  REQUIRE(red.shift == 3);
}

TEST_CASE("numerology properties") {
  PropertyConfig cfg;
  for (auto* p : {&property_numerology, &property_stalk}) {
    const auto r = (*p)(cfg);
    INFO(r.name << ": " << r.counterexample);
    REQUIRE(r.passed);
  }
}
