#pragma once

// Closed-form invariants of a stratum of the GL_n Hitchin base and the
// support report that checks them against the homology of the cographic
// complex.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hitchin/complexes.hpp"
#include "hitchin/core.hpp"
#include "hitchin/homology.hpp"
#include "hitchin/multigraph.hpp"
#include "hitchin/symgroup.hpp"

namespace hitchin {

inline long long dim_hitchin_base(int n, int genus) {
  return static_cast<long long>(n) * n * (genus - 1) + 1;
}

inline long long dim_moduli(int n, int genus) {
  return static_cast<long long>(n) * n * (2 * genus - 2) + 2;
}

inline long long delta_aff_formula(const HitchinPartition& p) {
  long long s = 0;
  const auto& parts = p.parts();
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      s += static_cast<long long>(parts[i]) * parts[j] * (2 * p.genus() - 2);
  return s - p.k() + 1;
}

/// 2 (dim A - delta): the dimension of H^1 of the normalization.
inline long long normalized_h1(const HitchinPartition& p) {
  return 2 * (dim_hitchin_base(p.n(), p.genus()) - delta_aff_formula(p));
}

/// (k - 1)! C(2(dim A - delta), i).
inline Integer local_system_rank(const HitchinPartition& p, long long i) {
  const long long h = normalized_h1(p);
  if (i < 0 || i > h) throw Error("outside perversity range");
  return factorial(static_cast<std::uint64_t>(p.k() - 1)) *
         binomial_big(static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(i));
}

inline Integer monodromy_group_order(const HitchinPartition& p) {
  Integer o = 1;
  for (int a : p.multiplicities()) o *= factorial(static_cast<std::uint64_t>(a));
  return o;
}

inline bool constant_monodromy(const HitchinPartition& p) { return p.all_parts_distinct(); }

struct DoublingReduction {
  Multigraph reduced;
  int shift = 0;
  std::vector<int> removed_labels;
};

/// Keeps the lowest-label edge of every parallel class (loops at a vertex
/// form one class). Each removed edge is a doubled copy of a kept one, so
/// b_l(reduced) = b_{l + shift}(input).
inline DoublingReduction doubling_reduce(const Multigraph& g) {
  if (!g.is_connected()) throw Error("graph must be connected");
  std::vector<std::size_t> order(g.edge_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return g.edge_at(a).label < g.edge_at(b).label; });
  std::set<std::pair<int, int>> seen;
  std::vector<char> keep(g.edge_count(), 0);
  DoublingReduction out;
  for (std::size_t pos : order) {
    const Edge& e = g.edge_at(pos);
    if (seen.insert({e.tail(), e.head()}).second)
      keep[pos] = 1;
    else
      out.removed_labels.push_back(e.label);
  }
  std::vector<Edge> edges;
  for (std::size_t pos = 0; pos < g.edge_count(); ++pos)
    if (keep[pos]) edges.push_back(g.edge_at(pos));
  out.reduced = Multigraph(g.vertex_count(), std::move(edges));
  out.shift = static_cast<int>(out.removed_labels.size());
  return out;
}

struct StalkOptions {
  int max_direct_edges = 12;
  int max_reduced_edges = 12;
  HomologyOptions homology{};
};

/// Rank of the top reduced homology b_{delta-1} of the cographic complex of
/// the dual graph, by every route that fits the size bounds.
struct TopRankComputation {
  std::optional<long long> direct;    // on the dual graph itself
  std::optional<long long> doubling;  // on the doubling-reduced graph
  int reduced_edges = 0;
  int shift = 0;
  std::vector<std::string> certificates;

  std::optional<long long> value() const { return direct ? direct : doubling; }
  bool consistent() const { return !(direct && doubling) || *direct == *doubling; }
};

inline TopRankComputation top_rank_from_homology(const HitchinPartition& p,
                                                 const StalkOptions& opt = {}) {
  TopRankComputation out;
  const Multigraph g = build_dual_graph(p);
  const int delta = delta_aff(g);
  EnumerationOptions eo;
  eo.threads = opt.homology.threads;
  if (static_cast<int>(g.edge_count()) <= opt.max_direct_edges) {
    const auto h = reduced_homology(cographic_complex(g, eo), opt.homology);
    out.direct = h.at(delta - 1);
    out.certificates.push_back("direct:" + h.certificate);
  }
  const auto red = doubling_reduce(g);
  out.reduced_edges = static_cast<int>(red.reduced.edge_count());
  out.shift = red.shift;
  if (out.reduced_edges <= opt.max_reduced_edges) {
    const auto h = reduced_homology(cographic_complex(red.reduced, eo), opt.homology);
    out.doubling = h.at(delta - 1 - red.shift);
    out.certificates.push_back("doubling:" + h.certificate);
  }
  return out;
}

struct StalkDimension {
  Integer value = 0;
  std::string method;  // "homology" or "formula"
};

/// b_{delta-1}(C(Gamma)) * C(2(dim A - delta), r - delta) for r in the
/// perversity range [delta, 2 dim A - delta].
inline StalkDimension stalk_dimension(const HitchinPartition& p, long long r,
                                      const StalkOptions& opt = {}) {
  const long long delta = delta_aff_formula(p);
  const long long h = normalized_h1(p);
  if (r < delta || r > delta + h) throw Error("outside perversity range");
  const auto top = top_rank_from_homology(p, opt);
  StalkDimension out;
  if (!top.consistent()) throw Error("top homology routes disagree");
  const Integer binom =
      binomial_big(static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(r - delta));
  if (auto v = top.value()) {
    out.value = Integer(*v) * binom;
    out.method = "homology";
  } else {
    out.value = factorial(static_cast<std::uint64_t>(p.k() - 1)) * binom;
    out.method = "formula";
  }
  return out;
}

enum class VerifyLevel { None, Formula, Homology };

inline std::string to_string(VerifyLevel v) {
  switch (v) {
    case VerifyLevel::None:
      return "none";
    case VerifyLevel::Formula:
      return "formula";
    case VerifyLevel::Homology:
      return "homology";
  }
  return "none";
}

inline VerifyLevel parse_verify_level(const std::string& s) {
  if (s == "none") return VerifyLevel::None;
  if (s == "formula") return VerifyLevel::Formula;
  if (s == "homology") return VerifyLevel::Homology;
  throw Error("unknown verify level: " + s);
}

struct VerificationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SupportReport {
  int genus = 0;
  std::vector<int> parts;
  int n = 0;
  int k = 0;
  long long dim_A = 0;
  long long dim_M = 0;
  long long delta_aff = 0;
  long long codim_S = 0;
  long long perversity_min = 0;
  long long perversity_max = 0;
  long long normalized_h1 = 0;
  std::vector<int> component_genera;
  long long arithmetic_genus = 0;
  Integer top_rank = 0;
  std::map<long long, Integer> local_system_ranks;  // perversity -> rank
  std::vector<int> multiplicities;                  // alpha_j for j = 1..n
  std::vector<int> young_factors;                   // nonzero alpha_j
  Integer monodromy_group_order = 0;
  bool constant_monodromy = false;
  std::optional<ClassFunction> monodromy_character;
  std::optional<int> degree;  // bundle degree, metadata only

  VerifyLevel verify_level = VerifyLevel::None;
  std::vector<VerificationCheck> checks;
  std::vector<std::string> warnings;
  std::string stalk_method = "formula";

  bool verified() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

struct ReportOptions {
  VerifyLevel verify = VerifyLevel::Formula;
  StalkOptions stalk{};
  std::optional<int> degree;
  int max_character_k = 6;
};

inline SupportReport support_report(const HitchinPartition& p, const ReportOptions& opt = {}) {
  SupportReport r;
  r.genus = p.genus();
  r.parts = p.parts();
  r.n = p.n();
  r.k = p.k();
  r.dim_A = dim_hitchin_base(r.n, r.genus);
  r.dim_M = dim_moduli(r.n, r.genus);
  r.delta_aff = delta_aff_formula(p);
  r.codim_S = r.delta_aff;
  r.perversity_min = r.delta_aff;
  r.perversity_max = 2 * r.dim_A - r.delta_aff;
  r.normalized_h1 = normalized_h1(p);
  for (int ni : p.parts()) r.component_genera.push_back(ni * ni * (r.genus - 1) + 1);
  for (int gi : r.component_genera) r.arithmetic_genus += gi;
  r.arithmetic_genus += r.delta_aff;
  r.top_rank = factorial(static_cast<std::uint64_t>(r.k - 1));
  for (long long i = 0; i <= r.normalized_h1; ++i)
    r.local_system_ranks[r.delta_aff + i] = local_system_rank(p, i);
  const auto alpha = p.multiplicities();
  for (std::size_t j = 1; j < alpha.size(); ++j)
    if (alpha[j] > 0) r.young_factors.push_back(alpha[j]);
  r.multiplicities.assign(alpha.begin() + 1, alpha.end());
  r.monodromy_group_order = monodromy_group_order(p);
  r.constant_monodromy = constant_monodromy(p);
  r.verify_level = opt.verify;
  if (opt.degree) {
    if (std::gcd(*opt.degree, r.n) != 1) throw Error("degree must be coprime to n");
    r.degree = opt.degree;
  }
  if (r.k <= opt.max_character_k && r.k >= 1)
    r.monodromy_character = restrict_to_young(induced_character_oracle(r.k), r.young_factors);

  if (opt.verify == VerifyLevel::None) return r;

  auto check = [&](std::string name, bool ok, std::string detail = {}) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const Multigraph g = build_dual_graph(p);
  check("delta_formula_matches_graph", delta_aff(g) == r.delta_aff);
  check("dim_M_is_twice_dim_A", r.dim_M == 2 * r.dim_A);
  check("perversity_range_symmetric", r.perversity_min + r.perversity_max == 2 * r.dim_A);
  check("arithmetic_genus_is_dim_A", r.arithmetic_genus == r.dim_A);
  check("normalized_h1_from_genera",
        r.normalized_h1 == 2 * (r.arithmetic_genus - r.delta_aff));
  bool symmetric = true;
  for (long long i = 0; i <= r.normalized_h1; ++i)
    symmetric = symmetric && local_system_rank(p, i) == local_system_rank(p, r.normalized_h1 - i);
  check("rank_symmetry", symmetric);
  check("constant_monodromy_iff_trivial_young_group",
        r.constant_monodromy == (r.monodromy_group_order == 1));
  if (r.monodromy_character) {
    const Rational dim = r.monodromy_character->values.begin()->second;
    check("monodromy_character_dimension", dim == Rational(r.top_rank));
  }

  if (opt.verify == VerifyLevel::Homology) {
    const auto top = top_rank_from_homology(p, opt.stalk);
    if (!top.value()) {
      r.warnings.push_back("homology verification infeasible: doubling-reduced graph has " +
                           std::to_string(top.reduced_edges) + " edges; formula values only");
    } else {
      r.stalk_method = "homology";
      check("top_homology_routes_agree", top.consistent());
      check("top_rank_from_homology", Integer(*top.value()) == r.top_rank,
            "b_{delta-1} = " + std::to_string(*top.value()));
      bool stalks = true;
      for (const auto& [perv, rank] : r.local_system_ranks) {
        const Integer stalk =
            Integer(*top.value()) *
            binomial_big(static_cast<std::uint64_t>(r.normalized_h1),
                         static_cast<std::uint64_t>(perv - r.delta_aff));
        stalks = stalks && stalk == rank;
      }
      check("stalk_dimensions_match_ranks", stalks);
    }
  }
  return r;
}

}  // namespace hitchin
