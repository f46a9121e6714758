#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "hitchin/io.hpp"
#include "hitchin/properties.hpp"

using namespace hitchin;

TEST_CASE("graph JSON round trip") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const Multigraph g = random_connected_multigraph(rng, 9);
    const Multigraph h = read_graph(write_graph(g));
    REQUIRE(h.vertex_count() == g.vertex_count());
    REQUIRE(h.labels() == g.labels());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      REQUIRE(h.edge_at(i).u == g.edge_at(i).u);
      REQUIRE(h.edge_at(i).v == g.edge_at(i).v);
    }
    REQUIRE(write_graph(h) == write_graph(g));
  }
  const Multigraph labelled(2, {{0, 1, 5}, {0, 1, 9}});
  REQUIRE(read_graph(write_graph(labelled)).labels() == std::vector<int>{5, 9});
}

TEST_CASE("malformed graph documents are rejected") {
  REQUIRE_THROWS_AS(read_graph("not json"), Error);
  REQUIRE_THROWS_AS(read_graph("{\"edges\": []}"), Error);
  REQUIRE_THROWS_AS(read_graph("{\"vertices\": 2, \"edges\": [[0, 5]]}"), Error);
  REQUIRE_THROWS_AS(read_graph("{\"vertices\": 2, \"edges\": 3}"), Error);
  REQUIRE_THROWS_AS(load_graph_file("/nonexistent/graph.json"), Error);
}

TEST_CASE("complex and homology documents") {
  const FaceComplex c = cographic_complex(Multigraph::complete(3));
  const Json j = complex_to_json(c, true);
  REQUIRE(j["kind"] == "cographic");
  REQUIRE(j["f_vector"] == Json::array({1, 3}));
  REQUIRE(j["faces"].size() == 4);
  const Json h = homology_to_json(reduced_homology(c));
  REQUIRE(h["betti"]["0"] == 2);
  REQUIRE(h["betti"]["-1"] == 0);
}

TEST_CASE("report documents") {
  const auto r = support_report(HitchinPartition(2, {1, 1}));
  const Json j = report_to_json(r);
  REQUIRE(j["delta_aff"] == 1);
  REQUIRE(j["perversity_range"] == Json::array({1, 9}));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  REQUIRE(keys.front() == "genus");
  REQUIRE(keys.back() == "verification");

  const std::string md = report_to_markdown(r, {}, 2024);
  REQUIRE(md.find("| delta_aff | 1 |") != std::string::npos);
  REQUIRE(md.find("seed: 2024") != std::string::npos);
  REQUIRE(md.find("reference") == std::string::npos);

  const std::string annotated = report_to_markdown(r, {{"delta_aff", "dimension of H^1"}}, 1);
  REQUIRE(annotated.find("| delta_aff | 1 | dimension of H^1 |") != std::string::npos);

  const std::string trivial = report_to_markdown(support_report(HitchinPartition(2, {3})), {}, 1);
  REQUIRE(trivial.find("no new support stratum content") != std::string::npos);
}

TEST_CASE("anchor files") {
  const std::string path = "anchors_test.json";
  {
    std::ofstream out(path);
    out << "{\"delta_aff\": \"ref A\", \"dim_A\": \"ref B\"}";
  }
  const auto a = load_anchor_file(path);
  REQUIRE(a.at("dim_A") == "ref B");
  {
    std::ofstream out(path);
    out << "[1, 2]";
  }
  REQUIRE_THROWS_AS(load_anchor_file(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("CSV flattening") {
  Json j;
  j["a"] = 1;
  j["b"] = Json::array({2, 3});
  j["c"]["d"] = "x,y";
  REQUIRE(json_to_csv(j) == "field,value\na,1\nb.0,2\nb.1,3\nc.d,\"x,y\"\n");
  REQUIRE(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
