#pragma once

// JSON, Markdown and CSV emitters plus the graph file format
// {"vertices": k, "edges": [[u, v], ...]}. Emitters use insertion-ordered
// objects so documents are byte-stable.

#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hitchin/cks.hpp"
#include "hitchin/complexes.hpp"
#include "hitchin/core.hpp"
#include "hitchin/homology.hpp"
#include "hitchin/multigraph.hpp"
#include "hitchin/numerology.hpp"
#include "hitchin/symgroup.hpp"

namespace hitchin {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

/// Integral rationals as numbers, others as "p/q" strings.
inline Json rational_json(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1)
    return integer_json(Integer(boost::multiprecision::numerator(q)));
  return q.str();
}

inline std::string rational_text(const Rational& q) { return q.str(); }

inline std::string integer_text(const Integer& x) { return x.str(); }

// ---- graphs ---------------------------------------------------------------

inline Json graph_to_json(const Multigraph& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  Json edges = Json::array();
  bool positional = true;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge_at(i);
    edges.push_back(Json::array({e.u, e.v}));
    positional = positional && e.label == static_cast<int>(i);
  }
  j["edges"] = std::move(edges);
  if (!positional) j["labels"] = g.labels();
  return j;
}

inline std::string write_graph(const Multigraph& g) { return graph_to_json(g).dump() + "\n"; }

inline Multigraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw Error("graph JSON needs \"vertices\" and \"edges\"");
  if (!j["vertices"].is_number_integer()) throw Error("\"vertices\" must be an integer");
  const int k = j["vertices"].get<int>();
  std::vector<Edge> edges;
  const Json& list = j["edges"];
  if (!list.is_array()) throw Error("\"edges\" must be an array");
  std::vector<int> labels;
  if (j.contains("labels")) {
    labels = j["labels"].get<std::vector<int>>();
    if (labels.size() != list.size()) throw Error("\"labels\" length must match \"edges\"");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Json& pair = list[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer())
      throw Error("each edge must be a pair of vertex indices");
    edges.push_back({pair[0].get<int>(), pair[1].get<int>(),
                     labels.empty() ? static_cast<int>(i) : labels[i]});
  }
  return Multigraph(k, std::move(edges));
}

inline Multigraph read_graph(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed graph JSON: ") + e.what());
  }
  return graph_from_json(j);
}

inline Multigraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_graph(ss.str());
}

// ---- complexes and homology -------------------------------------------------

inline Json complex_to_json(const FaceComplex& c, bool with_faces) {
  Json j;
  j["kind"] = to_string(c.kind());
  j["ground_set"] = c.cell_names();
  j["dimension"] = c.dimension();
  Json f = Json::array();
  for (auto n : c.f_vector()) f.push_back(n);
  j["f_vector"] = std::move(f);
  if (with_faces) {
    Json faces = Json::array();
    for (int k = 0; k <= c.max_cardinality(); ++k)
      for (const CellSet& face : c.faces(k)) {
        Json cells = Json::array();
        face.for_each([&](int cell) { cells.push_back(c.cell_names()[static_cast<std::size_t>(cell)]); });
        faces.push_back(std::move(cells));
      }
    j["faces"] = std::move(faces);
  }
  return j;
}

inline Json homology_to_json(const HomologyProfile& h) {
  Json j;
  Json betti = Json::object();
  for (int d = -1; d <= h.top_dimension(); ++d) betti[std::to_string(d)] = h.at(d);
  j["betti"] = std::move(betti);
  j["euler"] = h.euler;
  j["certificate"] = h.certificate;
  return j;
}

// ---- characters ---------------------------------------------------------------

inline Json character_to_json(const ClassFunction& chi) {
  Json j;
  j["factors"] = chi.factors;
  Json values = Json::object();
  for (const auto& [key, v] : chi.keyed()) values[key] = rational_json(v);
  j["values"] = std::move(values);
  return j;
}

// ---- CKS ------------------------------------------------------------------------

inline Json cks_to_json(const CKSCohomology& h) {
  auto by_degree = [](const auto& v) {
    Json o = Json::object();
    for (std::size_t k = 0; k < v.size(); ++k) o[std::to_string(k)] = v[k];
    return o;
  };
  Json j;
  j["exterior_degree"] = h.exterior_degree;
  j["delta"] = h.delta;
  j["top_weight_value"] = h.top_weight;
  j["term_dims"] = by_degree(h.term_dims);
  j["degrees"] = by_degree(h.dims);
  j["top_weight_term_dims"] = by_degree(h.top_weight_term_dims);
  j["top_weight"] = by_degree(h.top_weight_dims);
  Json weights = Json::object();
  for (const auto& [w, dims] : h.by_weight) weights[std::to_string(w)] = by_degree(dims);
  j["by_weight"] = std::move(weights);
  j["modular_check_agrees"] = h.modular_agree;
  return j;
}

// ---- support report -----------------------------------------------------------

inline Json report_to_json(const SupportReport& r) {
  Json j;
  j["genus"] = r.genus;
  j["partition"] = r.parts;
  j["n"] = r.n;
  j["k"] = r.k;
  if (r.degree) j["degree"] = *r.degree;
  j["dim_A"] = r.dim_A;
  j["dim_M"] = r.dim_M;
  j["delta_aff"] = r.delta_aff;
  j["codim_S"] = r.codim_S;
  j["perversity_range"] = Json::array({r.perversity_min, r.perversity_max});
  j["normalized_h1"] = r.normalized_h1;
  j["component_genera"] = r.component_genera;
  j["arithmetic_genus"] = r.arithmetic_genus;
  j["top_rank"] = integer_json(r.top_rank);
  Json ranks = Json::object();
  for (const auto& [perv, rank] : r.local_system_ranks) ranks[std::to_string(perv)] = integer_json(rank);
  j["local_system_ranks"] = std::move(ranks);
  j["multiplicities"] = r.multiplicities;
  j["young_factors"] = r.young_factors;
  j["monodromy_group_order"] = integer_json(r.monodromy_group_order);
  j["constant_monodromy"] = r.constant_monodromy;
  if (r.monodromy_character) j["monodromy_character"] = character_to_json(*r.monodromy_character);
  Json v;
  v["level"] = to_string(r.verify_level);
  v["stalk_method"] = r.stalk_method;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json o;
    o["name"] = c.name;
    o["passed"] = c.passed;
    if (!c.detail.empty()) o["detail"] = c.detail;
    checks.push_back(std::move(o));
  }
  v["checks"] = std::move(checks);
  v["warnings"] = r.warnings;
  v["passed"] = r.verified();
  j["verification"] = std::move(v);
  return j;
}

/// Optional per-field annotations for Markdown reports, e.g. a pointer to
/// the statement a number comes from. Keys are report field names.
using AnchorMap = std::map<std::string, std::string>;

inline AnchorMap load_anchor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open anchor file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed anchor JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("anchor file must hold a JSON object");
  AnchorMap out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string()) throw Error("anchor values must be strings");
    out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

inline std::string report_to_markdown(const SupportReport& r, const AnchorMap& anchors,
                                      std::uint64_t seed) {
  std::ostringstream out;
  const bool annotate = !anchors.empty();
  auto row = [&](const std::string& field, const std::string& value) {
    out << "| " << field << " | " << value << " |";
    if (annotate) {
      auto it = anchors.find(field);
      out << ' ' << (it == anchors.end() ? "" : it->second) << " |";
    }
    out << "\n";
  };
  std::string parts;
  for (std::size_t i = 0; i < r.parts.size(); ++i) parts += (i ? "," : "") + std::to_string(r.parts[i]);
  out << "# Support report: genus " << r.genus << ", partition (" << parts << ")\n\n";
  if (r.delta_aff == 0)
    out << "The partition has a single part: the stratum is the whole base and carries no new "
           "support stratum content.\n\n";
  out << (annotate ? "| field | value | reference |\n|---|---|---|\n" : "| field | value |\n|---|---|\n");
  row("n", std::to_string(r.n));
  row("k", std::to_string(r.k));
  if (r.degree) row("degree", std::to_string(*r.degree));
  row("dim_A", std::to_string(r.dim_A));
  row("dim_M", std::to_string(r.dim_M));
  row("delta_aff", std::to_string(r.delta_aff));
  row("codim_S", std::to_string(r.codim_S));
  row("perversity_range",
      "[" + std::to_string(r.perversity_min) + ", " + std::to_string(r.perversity_max) + "]");
  row("normalized_h1", std::to_string(r.normalized_h1));
  std::string genera;
  for (std::size_t i = 0; i < r.component_genera.size(); ++i)
    genera += (i ? "," : "") + std::to_string(r.component_genera[i]);
  row("component_genera", genera);
  row("top_rank", integer_text(r.top_rank));
  row("monodromy_group_order", integer_text(r.monodromy_group_order));
  row("constant_monodromy", r.constant_monodromy ? "true" : "false");
  out << "\n## Local system ranks\n\n| perversity | rank |\n|---|---|\n";
  for (const auto& [perv, rank] : r.local_system_ranks)
    out << "| " << perv << " | " << integer_text(rank) << " |\n";
  if (r.monodromy_character) {
    out << "\n## Monodromy character\n\n| class | value |\n|---|---|\n";
    for (const auto& [key, v] : r.monodromy_character->keyed())
      out << "| " << key << " | " << rational_text(v) << " |\n";
  }
  out << "\n## Verification (" << to_string(r.verify_level) << ")\n\n";
  if (r.checks.empty()) out << "No checks requested.\n";
  for (const auto& c : r.checks)
    out << "- " << (c.passed ? "PASS" : "FAIL") << " " << c.name
        << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  for (const auto& w : r.warnings) out << "- WARNING " << w << "\n";
  out << "\nseed: " << seed << "\n";
  return out.str();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Flattens a JSON document into "path,value" rows.
inline std::string json_to_csv(const Json& j) {
  std::ostringstream out;
  out << "field,value\n";
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& node,
                                                                  const std::string& path) {
    if (node.is_object()) {
      for (auto it = node.begin(); it != node.end(); ++it)
        walk(it.value(), path.empty() ? it.key() : path + "." + it.key());
    } else if (node.is_array()) {
      for (std::size_t i = 0; i < node.size(); ++i) walk(node[i], path + "." + std::to_string(i));
    } else {
      out << csv_escape(path) << ','
          << csv_escape(node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
    }
  };
  walk(j, "");
  return out.str();
}

}  // namespace hitchin
