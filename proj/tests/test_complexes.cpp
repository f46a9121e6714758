#include <catch2/catch_amalgamated.hpp>

#include "hitchin/complexes.hpp"
#include "hitchin/properties.hpp"

using namespace hitchin;

TEST_CASE("cographic complex of K4") {
  const FaceComplex c = cographic_complex(Multigraph::complete(4));
  REQUIRE(c.f_vector() == std::vector<std::size_t>{1, 6, 15, 16});
  REQUIRE(c.dimension() == 2);
  REQUIRE(c.is_downward_closed());
  REQUIRE(c.kind() == ComplexKind::Cographic);
}

TEST_CASE("cographic complex of the two-vertex graph with m parallel edges is a simplex boundary") {
  for (int m = 2; m <= 6; ++m) {
    std::vector<std::pair<int, int>> pairs(static_cast<std::size_t>(m), {0, 1});
    const FaceComplex c = cographic_complex(Multigraph::from_pairs(2, pairs));
    // every proper subset of the m edges can be removed
    std::vector<std::size_t> expect;
    for (int k = 0; k < m; ++k) expect.push_back(binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k)));
    REQUIRE(c.f_vector() == expect);
  }
}

TEST_CASE("a tree has only the empty face") {
  const FaceComplex c = cographic_complex(Multigraph::from_pairs(3, {{0, 1}, {1, 2}}));
  REQUIRE(c.f_vector() == std::vector<std::size_t>{1});
  REQUIRE(c.dimension() == -1);
}

TEST_CASE("disconnected graphs are rejected") {
  REQUIRE_THROWS_AS(cographic_complex(Multigraph::from_pairs(3, {{0, 1}})), Error);
  REQUIRE_THROWS_AS(nonspanning_complex(Multigraph::from_pairs(3, {{0, 1}})), Error);
}

TEST_CASE("enumeration refuses too many edges") {
  const auto g = build_dual_graph(HitchinPartition(4, {1, 1, 1}));  // 18 edges
  EnumerationOptions eo;
  eo.max_cells = 10;
  REQUIRE_THROWS_AS(cographic_complex(g, eo), Error);
}

TEST_CASE("set partitions are counted by Bell numbers") {
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52, 203};
  for (int r = 1; r <= 6; ++r) {
    REQUIRE(set_partitions(r).size() == bell[static_cast<std::size_t>(r)]);
    if (r >= 2) REQUIRE(proper_partitions(r).size() == bell[static_cast<std::size_t>(r)] - 2);
  }
  REQUIRE_THROWS_AS(proper_partitions(1), Error);
}

TEST_CASE("refinement order") {
  const auto parts = set_partitions(3);
  for (const auto& a : parts) {
    REQUIRE(a.refines(a));
    for (const auto& b : parts)
      if (a.refines(b) && b.refines(a)) REQUIRE(a.to_string() == b.to_string());
  }
}

TEST_CASE("partition-lattice order complexes") {
  // r = 3: three atoms, pairwise incomparable
  REQUIRE(partition_order_complex(3).f_vector() == std::vector<std::size_t>{1, 3});
  // r = 4: 13 elements; chains are atoms (6), coatoms (7), and 18 covering pairs
  const auto c4 = partition_order_complex(4);
  REQUIRE(c4.f_vector() == std::vector<std::size_t>{1, 13, 18});
}

TEST_CASE("face membership matches brute force over edge subsets") {
  PropertyConfig cfg;
  cfg.trials = 80;
  const auto r = property_face_enumeration(cfg);
  INFO(r.counterexample);
  REQUIRE(r.passed);
}
