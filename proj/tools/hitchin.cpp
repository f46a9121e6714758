// Command-line driver: support reports, complexes, characters, CKS
// dimensions and the property self-test.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hitchin/cks.hpp"
#include "hitchin/complexes.hpp"
#include "hitchin/homology.hpp"
#include "hitchin/io.hpp"
#include "hitchin/numerology.hpp"
#include "hitchin/properties.hpp"
#include "hitchin/symgroup.hpp"

namespace {

using hitchin::Json;

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

struct GlobalConfig {
  std::uint64_t seed = 2024;
  unsigned threads = hitchin::default_parallelism();
  std::string format = "json";
  std::string output;
};

struct Document {
  Json body;
  std::optional<std::string> markdown;
  bool ok = true;
};

std::string json_to_markdown(const std::string& title, const Json& j) {
  std::ostringstream out;
  out << "# " << title << "\n\n| field | value |\n|---|---|\n";
  // flat arrays of scalars stay on one row
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& node,
                                                                  const std::string& path) {
    if (node.is_object()) {
      for (auto it = node.begin(); it != node.end(); ++it)
        walk(it.value(), path.empty() ? it.key() : path + "." + it.key());
    } else if (node.is_array() && std::none_of(node.begin(), node.end(), [](const Json& x) {
                 return x.is_structured();
               })) {
      out << "| " << path << " | " << node.dump() << " |\n";
    } else if (node.is_array()) {
      for (std::size_t i = 0; i < node.size(); ++i) walk(node[i], path + "." + std::to_string(i));
    } else {
      out << "| " << path << " | " << (node.is_string() ? node.get<std::string>() : node.dump())
          << " |\n";
    }
  };
  walk(j, "");
  return out.str();
}

std::string render(const Document& doc, const GlobalConfig& g, const std::string& title) {
  if (g.format == "json") return doc.body.dump(2) + "\n";
  if (g.format == "csv") return hitchin::json_to_csv(doc.body);
  if (doc.markdown) return *doc.markdown;
  return json_to_markdown(title, doc.body);
}

Json header(const std::string& command, const GlobalConfig& g) {
  Json j;
  j["command"] = command;
  j["seed"] = g.seed;
  return j;
}

hitchin::HomologyOptions homology_options(const GlobalConfig& g) {
  hitchin::HomologyOptions o;
  o.seed = g.seed;
  o.threads = g.threads;
  return o;
}

// ---- report ---------------------------------------------------------------

struct ReportArgs {
  int genus = 0;
  std::vector<int> partition;
  std::string verify = "formula";
  std::optional<int> degree;
  std::string anchors;
};

Document cmd_report(const ReportArgs& a, const GlobalConfig& g) {
  const auto p = hitchin::HitchinPartition::sorted(a.genus, a.partition);
  hitchin::ReportOptions opt;
  opt.verify = hitchin::parse_verify_level(a.verify);
  opt.degree = a.degree;
  opt.stalk.homology = homology_options(g);
  if (a.degree && std::gcd(*a.degree, p.n()) != 1)
    throw hitchin::Error("degree must be coprime to n");
  const auto r = hitchin::support_report(p, opt);
  const hitchin::AnchorMap anchors =
      a.anchors.empty() ? hitchin::AnchorMap{} : hitchin::load_anchor_file(a.anchors);
  Document doc;
  doc.body = header("report", g);
  doc.body["report"] = hitchin::report_to_json(r);
  doc.markdown = hitchin::report_to_markdown(r, anchors, g.seed);
  doc.ok = r.verified();
  return doc;
}

// ---- complex --------------------------------------------------------------

struct ComplexArgs {
  std::string graph;
  std::optional<int> genus;
  std::vector<int> partition;
  std::optional<int> r;
  std::string kind = "cographic";
  bool faces = false;
};

Document cmd_complex(const ComplexArgs& a, const GlobalConfig& g) {
  const int sources = (!a.graph.empty()) + (!a.partition.empty()) + (a.r.has_value());
  if (sources != 1) throw hitchin::Error("give exactly one of --graph, --partition or --r");
  if (!a.partition.empty() && !a.genus) throw hitchin::Error("--partition requires --genus");
  if (a.genus && a.partition.empty()) throw hitchin::Error("--genus requires --partition");

  Document doc;
  doc.body = header("complex", g);
  hitchin::EnumerationOptions eo;
  eo.threads = g.threads;
  hitchin::FaceComplex c;
  if (a.kind == "flats") {
    int k = 0;
    if (a.r) k = *a.r;
    else if (!a.partition.empty()) k = static_cast<int>(a.partition.size());
    else throw hitchin::Error("--kind flats needs --r or --partition");
    if (k < 2 || k > 7) throw hitchin::Error("--r must lie in [2, 7] for flats");
    doc.body["r"] = k;
    c = hitchin::partition_order_complex(k);
  } else {
    hitchin::Multigraph graph;
    if (!a.graph.empty()) {
      graph = hitchin::load_graph_file(a.graph);
    } else if (a.r) {
      if (*a.r < 1 || *a.r > 8) throw hitchin::Error("--r must lie in [1, 8]");
      graph = hitchin::Multigraph::complete(*a.r);
      doc.body["r"] = *a.r;
    } else {
      graph = hitchin::build_dual_graph(hitchin::HitchinPartition::sorted(*a.genus, a.partition));
    }
    doc.body["graph"] = hitchin::graph_to_json(graph);
    doc.body["delta_aff"] = hitchin::delta_aff(graph);
    if (a.kind == "cographic") c = hitchin::cographic_complex(graph, eo);
    else if (a.kind == "nonspanning") c = hitchin::nonspanning_complex(graph, eo);
    else throw hitchin::Error("unknown complex kind: " + a.kind);
  }
  const auto h = hitchin::reduced_homology(c, homology_options(g));
  doc.body["complex"] = hitchin::complex_to_json(c, a.faces);
  doc.body["homology"] = hitchin::homology_to_json(h);
  doc.ok = h.betti_euler() == h.euler;
  doc.body["euler_check"] = doc.ok;
  return doc;
}

// ---- character ------------------------------------------------------------

struct CharacterArgs {
  int r = 0;
  std::vector<int> alphas;
  std::string twist = "simplicial";
};

Json character_table(const hitchin::ClassFunction& homology, const hitchin::ClassFunction& oracle,
                     const hitchin::ClassFunction& flats) {
  Json rows = Json::array();
  for (const auto& cls : hitchin::product_classes(homology.factors)) {
    Json row;
    row["class"] = hitchin::ClassFunction::class_tuple_key(cls);
    row["size"] = hitchin::integer_json(hitchin::product_class_size(cls));
    row["homology"] = hitchin::rational_json(homology.values.at(cls));
    row["induced"] = hitchin::rational_json(oracle.values.at(cls));
    row["partition_lattice"] = hitchin::rational_json(flats.values.at(cls));
    rows.push_back(std::move(row));
  }
  return rows;
}

Document cmd_character(const CharacterArgs& a, const GlobalConfig& g) {
  if (a.r < 3 || a.r > 5) throw hitchin::Error("--r must lie in [3, 5]");
  hitchin::CharacterOptions opt;
  opt.homology = homology_options(g);
  if (a.twist == "simplicial") opt.twist = hitchin::ActionTwist::Simplicial;
  else if (a.twist == "orientation") opt.twist = hitchin::ActionTwist::Orientation;
  else throw hitchin::Error("unknown twist: " + a.twist);

  const auto chi = hitchin::top_homology_character(a.r, opt);
  const auto oracle = hitchin::induced_character_oracle(a.r);
  const auto flats = hitchin::partition_lattice_character(a.r, opt);
  const bool equal = chi == oracle;

  Document doc;
  doc.body = header("character", g);
  doc.body["r"] = a.r;
  doc.body["twist"] = a.twist;
  doc.body["classes"] = character_table(chi, oracle, flats);
  doc.body["dimension"] = hitchin::rational_json(chi.value(hitchin::IntPartition(static_cast<std::size_t>(a.r), 1)));
  doc.body["inner_product_with_itself"] = hitchin::rational_json(hitchin::character_inner_product(chi, chi));
  doc.body["verdict"] = equal ? "EQUAL" : "DIFFERENT";
  doc.body["partition_lattice_verdict"] = chi == flats ? "EQUAL" : "DIFFERENT";
  if (!a.alphas.empty()) {
    const int sum = std::accumulate(a.alphas.begin(), a.alphas.end(), 0);
    if (sum != a.r) throw hitchin::Error("--alphas must sum to r");
    for (int x : a.alphas)
      if (x < 1) throw hitchin::Error("--alphas entries must be positive");
    const auto rc = hitchin::restrict_to_young(chi, a.alphas);
    const auto ro = hitchin::restrict_to_young(oracle, a.alphas);
    const auto rf = hitchin::restrict_to_young(flats, a.alphas);
    Json block;
    block["alphas"] = a.alphas;
    block["classes"] = character_table(rc, ro, rf);
    block["verdict"] = rc == ro ? "EQUAL" : "DIFFERENT";
    doc.body["restriction"] = std::move(block);
  }
  doc.ok = equal;
  return doc;
}

// ---- cks ------------------------------------------------------------------

struct CksArgs {
  int genus = 0;
  std::vector<int> partition;
  int exterior = 0;
  std::size_t bound = hitchin::ExteriorBasis::kDefaultBound;
};

Document cmd_cks(const CksArgs& a, const GlobalConfig& g) {
  const auto p = hitchin::HitchinPartition::sorted(a.genus, a.partition);
  const auto model = hitchin::GradedH1Model::from_partition(p);
  hitchin::CKSOptions opt;
  opt.bound = a.bound;
  opt.threads = g.threads;
  opt.seed = g.seed;
  const auto cx = hitchin::build_cks(model, a.exterior, opt);
  const auto h = hitchin::cks_cohomology(cx, opt);

  Document doc;
  doc.body = header("cks", g);
  doc.body["genus"] = p.genus();
  doc.body["partition"] = p.parts();
  doc.body["model_dimension"] = model.dimension();
  doc.body["graded_pieces"] = Json::array({model.delta(), model.middle_dimension(), model.delta()});
  doc.body["cohomology"] = hitchin::cks_to_json(h);

  Json check;
  const bool square_zero = cx.verify_square_zero();
  check["square_zero"] = square_zero;
  bool agrees = true;
  try {
    hitchin::EnumerationOptions eo;
    eo.threads = g.threads;
    const auto hom = hitchin::reduced_homology(hitchin::cographic_complex(model.graph(), eo),
                                               homology_options(g));
    const int delta = model.delta();
    const long long factor =
        a.exterior >= delta
            ? static_cast<long long>(hitchin::binomial(
                  static_cast<std::uint64_t>(model.middle_dimension()),
                  static_cast<std::uint64_t>(a.exterior - delta)))
            : 0;
    Json expected = Json::object();
    for (std::size_t k = 0; k < h.top_weight_dims.size(); ++k) {
      const long long e = factor * hom.at(static_cast<int>(k) - 1);
      expected[std::to_string(k)] = e;
      agrees = agrees && h.top_weight_dims[k] == e;
    }
    check["expected_top_weight"] = std::move(expected);
    check["agrees"] = agrees;
  } catch (const hitchin::Error& e) {
    check["skipped"] = e.what();
  }
  doc.body["cross_check"] = std::move(check);
  doc.ok = square_zero && agrees && h.modular_agree;
  return doc;
}

// ---- selftest -------------------------------------------------------------

struct SelftestArgs {
  int max_edges = 10;
  std::vector<std::string> only;
  int r = 5;
  int trials = 200;
};

Document cmd_selftest(const SelftestArgs& a, const GlobalConfig& g) {
  if (a.max_edges < 1 || a.max_edges > 16) throw hitchin::Error("--max-edges must lie in [1, 16]");
  if (a.r < 3 || a.r > 6) throw hitchin::Error("--r must lie in [3, 6]");
  if (a.trials < 1) throw hitchin::Error("--trials must be positive");
  const auto props = hitchin::all_properties();
  for (const auto& name : a.only)
    if (std::none_of(props.begin(), props.end(), [&](const auto& p) { return p.name == name; }))
      throw hitchin::Error("unknown property: " + name);

  hitchin::PropertyConfig cfg;
  cfg.seed = g.seed;
  cfg.max_edges = a.max_edges;
  cfg.r = a.r;
  cfg.trials = a.trials;
  cfg.threads = g.threads;

  Document doc;
  doc.body = header("selftest", g);
  doc.body["max_edges"] = a.max_edges;
  doc.body["trials"] = a.trials;
  doc.body["r"] = a.r;
  Json results = Json::array();
  std::ostringstream md;
  md << "# Self-test\n\n| property | result | cases | counterexample |\n|---|---|---|---|\n";
  for (const auto& prop : props) {
    if (!a.only.empty() && std::find(a.only.begin(), a.only.end(), prop.name) == a.only.end())
      continue;
    const auto res = prop.run(cfg);
    Json row;
    row["property"] = res.name;
    row["passed"] = res.passed;
    row["cases"] = res.cases;
    if (!res.passed) row["counterexample"] = res.counterexample;
    results.push_back(std::move(row));
    md << "| " << res.name << " | " << (res.passed ? "pass" : "FAIL") << " | " << res.cases << " | "
       << res.counterexample << " |\n";
    doc.ok = doc.ok && res.passed;
  }
  md << "\nseed: " << g.seed << "\n";
  doc.body["properties"] = std::move(results);
  doc.body["passed"] = doc.ok;
  doc.markdown = md.str();
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorics of Hitchin fibration supports"};
  app.require_subcommand(1);
  GlobalConfig global;
  app.add_option("--seed", global.seed, "random seed, recorded in every output")->capture_default_str();
  app.add_option("--threads", global.threads, "worker threads (default from HITCHIN_THREADS)");
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"json", "md", "csv"}))
      ->capture_default_str();
  app.add_option("--output", global.output, "write output to this file instead of stdout");
  app.fallthrough();

  ReportArgs report;
  auto* sub_report = app.add_subcommand("report", "numerology of the support for a partition");
  sub_report->add_option("--genus", report.genus)->required();
  sub_report->add_option("--partition", report.partition)->required()->delimiter(',');
  sub_report->add_option("--verify", report.verify, "none|formula|homology")->capture_default_str();
  sub_report->add_option("--degree", report.degree, "bundle degree (metadata)");
  sub_report->add_option("--anchors", report.anchors, "JSON file mapping fields to references");

  ComplexArgs cplx;
  auto* sub_complex = app.add_subcommand("complex", "f-vector and reduced Betti numbers");
  sub_complex->add_option("--graph", cplx.graph, "graph JSON file");
  sub_complex->add_option("--genus", cplx.genus);
  sub_complex->add_option("--partition", cplx.partition)->delimiter(',');
  sub_complex->add_option("--r", cplx.r, "complete graph on r vertices");
  sub_complex->add_option("--kind", cplx.kind)
      ->check(CLI::IsMember({"cographic", "nonspanning", "flats"}))
      ->capture_default_str();
  sub_complex->add_flag("--faces", cplx.faces, "list all faces");

  CharacterArgs character;
  auto* sub_character = app.add_subcommand("character", "S_r character on top homology");
  sub_character->add_option("--r", character.r)->required();
  sub_character->add_option("--alphas", character.alphas, "Young subgroup block sizes")->delimiter(',');
  sub_character->add_option("--twist", character.twist, "simplicial|orientation")->capture_default_str();

  CksArgs cks;
  auto* sub_cks = app.add_subcommand("cks", "CKS complex cohomology on the graded model");
  sub_cks->add_option("--genus", cks.genus)->required();
  sub_cks->add_option("--partition", cks.partition)->required()->delimiter(',');
  sub_cks->add_option("--exterior", cks.exterior, "exterior degree i")->required();
  sub_cks->add_option("--bound", cks.bound, "maximal exterior basis size")->capture_default_str();

  SelftestArgs self;
  auto* sub_self = app.add_subcommand("selftest", "randomized invariant checks");
  sub_self->add_option("--max-edges", self.max_edges)->capture_default_str();
  sub_self->add_option("--only", self.only, "property names")->delimiter(',');
  sub_self->add_option("--r", self.r)->capture_default_str();
  sub_self->add_option("--trials", self.trials)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (global.threads == 0) global.threads = 1;

  try {
    Document doc;
    std::string title;
    if (sub_report->parsed()) {
      doc = cmd_report(report, global);
      title = "Support report";
    } else if (sub_complex->parsed()) {
      doc = cmd_complex(cplx, global);
      title = "Complex";
    } else if (sub_character->parsed()) {
      doc = cmd_character(character, global);
      title = "Character";
    } else if (sub_cks->parsed()) {
      doc = cmd_cks(cks, global);
      title = "CKS complex";
    } else {
      doc = cmd_selftest(self, global);
      title = "Self-test";
    }
    if (!doc.markdown) doc.markdown = json_to_markdown(title, doc.body) + "\nseed: " + std::to_string(global.seed) + "\n";
    const std::string text = render(doc, global, title);
    if (global.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(global.output, std::ios::binary);
      if (!out) throw hitchin::Error("cannot write output file: " + global.output);
      out << text;
    }
    if (!doc.ok) std::cerr << "verification failed\n";
    return doc.ok ? kOk : kVerificationFailed;
  } catch (const hitchin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
