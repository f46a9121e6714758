#pragma once

// Randomized and exhaustive invariant checks. Each property returns a
// result with a case count and, on failure, a counterexample description.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hitchin/cks.hpp"
#include "hitchin/complexes.hpp"
#include "hitchin/homology.hpp"
#include "hitchin/io.hpp"
#include "hitchin/multigraph.hpp"
#include "hitchin/numerology.hpp"
#include "hitchin/symgroup.hpp"

namespace hitchin {

struct PropertyConfig {
  std::uint64_t seed = 42;
  int max_edges = 10;
  int trials = 200;
  int r = 5;
  unsigned threads = 1;
};

struct PropertyResult {
  std::string name;
  bool passed = true;
  long long cases = 0;
  std::string counterexample;
};

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Connected multigraph with 2..5 vertices and at most max_edges edges: a
/// random spanning tree plus random extra edges (occasionally loops).
inline Multigraph random_connected_multigraph(Rng& rng, int max_edges) {
  const int v = uniform_int(rng, 2, std::min(5, max_edges + 1));
  const int e = uniform_int(rng, v - 1, max_edges);
  std::vector<std::pair<int, int>> pairs;
  for (int x = 1; x < v; ++x) pairs.emplace_back(uniform_int(rng, 0, x - 1), x);
  while (static_cast<int>(pairs.size()) < e) {
    const int a = uniform_int(rng, 0, v - 1);
    int b = uniform_int(rng, 0, v - 1);
    if (a == b && rng() % 8 != 0) b = (a + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(v - 1))) % v;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  // shuffle edge order so labels are not tree-first
  for (std::size_t i = pairs.size(); i > 1; --i)
    std::swap(pairs[i - 1], pairs[static_cast<std::size_t>(rng() % i)]);
  return Multigraph::from_pairs(v, pairs);
}

inline std::set<int> random_nonempty_subset(Rng& rng, const std::vector<int>& labels) {
  std::set<int> s;
  while (s.empty())
    for (int l : labels)
      if (rng() % 2) s.insert(l);
  return s;
}

namespace detail {

inline std::string describe(const Multigraph& g) { return write_graph(g); }

inline std::string describe(const std::set<int>& s) {
  std::string out = "{";
  for (int x : s) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "}";
}

inline bool fail(PropertyResult& r, const std::string& why) {
  r.passed = false;
  if (r.counterexample.empty()) r.counterexample = why;
  return false;
}

inline HomologyOptions homology_options(const PropertyConfig& cfg) {
  HomologyOptions o;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  return o;
}

}  // namespace detail

inline PropertyResult property_delta_formula(const PropertyConfig&) {
  PropertyResult r{"delta_formula", true, 0, {}};
  for (int g = 2; g <= 5; ++g)
    for (int n = 1; n <= 8; ++n)
      for (const auto& parts : integer_partitions(n)) {
        std::vector<int> desc(parts.rbegin(), parts.rend());
        std::sort(desc.begin(), desc.end(), std::greater<>());
        const HitchinPartition p(g, desc);
        ++r.cases;
        if (delta_aff_formula(p) != delta_aff(build_dual_graph(p)))
          detail::fail(r, "g=" + std::to_string(g) + " partition " + p.to_string());
      }
  return r;
}

inline PropertyResult property_delta_relabel(const PropertyConfig& cfg) {
  PropertyResult r{"delta_relabel", true, 0, {}};
  Rng rng(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    const Multigraph g = random_connected_multigraph(rng, cfg.max_edges);
    std::vector<int> vperm(static_cast<std::size_t>(g.vertex_count()));
    std::iota(vperm.begin(), vperm.end(), 0);
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::vector<Edge> edges;
    const int offset = uniform_int(rng, 1, 100);
    for (const Edge& e : g.edges())
      edges.push_back({vperm[static_cast<std::size_t>(e.u)], vperm[static_cast<std::size_t>(e.v)],
                       e.label * 3 + offset});
    std::shuffle(edges.begin(), edges.end(), rng);
    const Multigraph h(g.vertex_count(), edges);
    ++r.cases;
    if (delta_aff(g) != delta_aff(h)) detail::fail(r, detail::describe(g));
  }
  return r;
}

/// Canonical form under vertex relabeling (brute force over vertex
/// permutations): sorted list of unordered endpoint pairs.
inline std::vector<std::pair<int, int>> canonical_edge_multiset(const Multigraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<int, int>> best;
  bool first = true;
  do {
    std::vector<std::pair<int, int>> cur;
    for (const Edge& e : g.edges()) {
      const int a = perm[static_cast<std::size_t>(e.u)], b = perm[static_cast<std::size_t>(e.v)];
      cur.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(cur.begin(), cur.end());
    if (first || cur < best) best = cur;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline PropertyResult property_contract_delete(const PropertyConfig& cfg) {
  PropertyResult r{"contract_delete", true, 0, {}};
  Rng rng(cfg.seed + 1);
  for (int t = 0; t < cfg.trials; ++t) {
    const Multigraph g = random_connected_multigraph(rng, cfg.max_edges);
    if (g.edge_count() < 2) continue;
    const auto labels = g.labels();
    const int a = labels[rng() % labels.size()];
    int b = a;
    while (b == a) b = labels[rng() % labels.size()];
    const Multigraph x = contract_edge(g, a).without_edge(b);
    const Multigraph y = contract_edge(g.without_edge(b), a);
    ++r.cases;
    if (x.vertex_count() != y.vertex_count() ||
        canonical_edge_multiset(x) != canonical_edge_multiset(y) || x.labels() != y.labels())
      detail::fail(r, detail::describe(g) + " contract " + std::to_string(a) + " delete " +
                          std::to_string(b));
  }
  return r;
}

inline PropertyResult property_cycle_space(const PropertyConfig& cfg) {
  PropertyResult r{"cycle_space", true, 0, {}};
  Rng rng(cfg.seed + 2);
  for (int t = 0; t < cfg.trials; ++t) {
    const Multigraph g = random_connected_multigraph(rng, cfg.max_edges);
    const auto basis = cycle_space(g);
    ++r.cases;
    if (static_cast<int>(basis.rank()) != delta_aff(g)) {
      detail::fail(r, "rank: " + detail::describe(g));
      continue;
    }
    for (const auto& z : basis.cycles) {
      const auto bd = chain_boundary(g, z, basis.orientation);
      if (std::any_of(bd.begin(), bd.end(), [](int x) { return x != 0; }))
        detail::fail(r, "not a cycle: " + detail::describe(g));
    }
    // pairing with the chord duals is the identity
    for (std::size_t c = 0; c < basis.rank(); ++c)
      for (std::size_t d = 0; d < basis.rank(); ++d) {
        const int v = basis.cycles[c][g.position_of(basis.chord_labels[d])];
        if (v != (c == d ? 1 : 0)) detail::fail(r, "pairing: " + detail::describe(g));
      }
  }
  return r;
}

/// Faces of a complex compared with a brute-force scan of all edge subsets.
inline PropertyResult property_face_enumeration(const PropertyConfig& cfg) {
  PropertyResult r{"face_enumeration", true, 0, {}};
  Rng rng(cfg.seed + 3);
  for (int t = 0; t < cfg.trials; ++t) {
    const Multigraph g = random_connected_multigraph(rng, std::min(cfg.max_edges, 12));
    const FaceComplex cog = cographic_complex(g);
    const FaceComplex ns = nonspanning_complex(g);
    const auto m = static_cast<int>(g.edge_count());
    std::size_t cog_count = 0, ns_count = 0;
    bool ok = cog.is_downward_closed() && ns.is_downward_closed();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      CellSet s;
      std::vector<Edge> rest, kept;
      for (int i = 0; i < m; ++i) {
        if (mask >> i & 1) {
          s.insert(i);
          kept.push_back(g.edge_at(static_cast<std::size_t>(i)));
        } else {
          rest.push_back(g.edge_at(static_cast<std::size_t>(i)));
        }
      }
      const bool removal_connected = Multigraph(g.vertex_count(), rest).is_connected();
      const bool spans = Multigraph(g.vertex_count(), kept).is_connected();
      if (removal_connected) ++cog_count;
      if (!spans) ++ns_count;
      ok = ok && cog.contains(s) == removal_connected && ns.contains(s) == !spans;
      // complement criterion: I in C(G) iff E \ I spans
      CellSet complement;
      for (int i = 0; i < m; ++i)
        if (!(mask >> i & 1)) complement.insert(i);
      ok = ok && cog.contains(s) == !ns.contains(complement);
    }
    ok = ok && cog_count == cog.face_count() && ns_count == ns.face_count();
    ok = ok && cog.dimension() == delta_aff(g) - 1;
    ++r.cases;
    if (!ok) detail::fail(r, detail::describe(g));
  }
  return r;
}

/// Homology concentrated in dimension delta - 1 with the Euler
/// characteristic matching the f-vector.
inline PropertyResult property_shellable(const PropertyConfig& cfg) {
  PropertyResult r{"shellable", true, 0, {}};
  Rng rng(cfg.seed + 4);
  for (int t = 0; t < cfg.trials; ++t) {
    const Multigraph g = random_connected_multigraph(rng, std::min(cfg.max_edges, 12));
    const int delta = delta_aff(g);
    if (delta < 1) continue;
    const auto h = reduced_homology(cographic_complex(g), detail::homology_options(cfg));
    ++r.cases;
    const auto nz = h.nonzero_dimensions();
    if (h.betti_euler() != h.euler || nz.size() > 1 || (nz.size() == 1 && nz[0] != delta - 1))
      detail::fail(r, detail::describe(g));
  }
  return r;
}

inline PropertyResult property_alexander(const PropertyConfig& cfg) {
  PropertyResult r{"alexander", true, 0, {}};
  for (int k = 3; k <= cfg.r; ++k) {
    const Multigraph g = Multigraph::complete(k);
    const int N = k * (k - 1) / 2;
    const auto a = reduced_homology(cographic_complex(g), detail::homology_options(cfg));
    const auto b = reduced_homology(nonspanning_complex(g), detail::homology_options(cfg));
    for (int i = -1; i <= N; ++i) {
      ++r.cases;
      if (a.at(i) != b.at(N - 3 - i))
        detail::fail(r, "r=" + std::to_string(k) + " i=" + std::to_string(i));
    }
  }
  return r;
}

inline PropertyResult property_folkman(const PropertyConfig& cfg) {
  PropertyResult r{"folkman", true, 0, {}};
  for (int k = 3; k <= cfg.r; ++k) {
    const auto a = reduced_homology(nonspanning_complex(Multigraph::complete(k)),
                                    detail::homology_options(cfg));
    const auto b = reduced_homology(partition_order_complex(k), detail::homology_options(cfg));
    const int top = std::max(a.top_dimension(), b.top_dimension());
    for (int d = -1; d <= top; ++d) {
      ++r.cases;
      if (a.at(d) != b.at(d)) detail::fail(r, "r=" + std::to_string(k) + " d=" + std::to_string(d));
    }
  }
  return r;
}

inline PropertyResult property_doubling(const PropertyConfig& cfg) {
  PropertyResult r{"doubling", true, 0, {}};
  Rng rng(cfg.seed + 5);
  for (int t = 0; t < cfg.trials; ++t) {
    const Multigraph g = random_connected_multigraph(rng, cfg.max_edges);
    const std::set<int> I = random_nonempty_subset(rng, g.labels());
    const auto doubled = double_edges(g, I);
    EnumerationOptions eo;
    eo.threads = cfg.threads;
    const auto a = reduced_homology(cographic_complex(g, eo), detail::homology_options(cfg));
    const auto b = reduced_homology(cographic_complex(doubled.graph, eo), detail::homology_options(cfg));
    const int shift = static_cast<int>(I.size());
    bool ok = true;
    for (int l = -1 - shift; l <= b.top_dimension(); ++l) ok = ok && a.at(l) == b.at(l + shift);
    ++r.cases;
    if (!ok) detail::fail(r, detail::describe(g) + " I=" + detail::describe(I));
  }
  return r;
}

inline PropertyResult property_induced_group(const PropertyConfig& cfg) {
  PropertyResult r{"induced_group", true, 0, {}};
  Rng rng(cfg.seed + 6);
  for (int k = 3; k <= std::min(cfg.r, 5); ++k) {
    const Multigraph g = Multigraph::complete(k);
    const FaceComplex c = cographic_complex(g);
    const auto cc = boundary_complex(c);
    const auto basis = top_cycle_basis(c, cc);
    const auto id = induced_map_on_top_homology(c, basis, edge_action(Permutation::identity(k), g));
    ++r.cases;
    if (!(id == SparseRationalMatrix::identity(basis.rank()))) detail::fail(r, "identity law");
    for (int t = 0; t < 10; ++t) {
      std::vector<int> a(static_cast<std::size_t>(k)), b(static_cast<std::size_t>(k));
      std::iota(a.begin(), a.end(), 0);
      std::iota(b.begin(), b.end(), 0);
      std::shuffle(a.begin(), a.end(), rng);
      std::shuffle(b.begin(), b.end(), rng);
      const Permutation pa(a), pb(b);
      const auto ma = induced_map_on_top_homology(c, basis, edge_action(pa, g));
      const auto mb = induced_map_on_top_homology(c, basis, edge_action(pb, g));
      const auto mab = induced_map_on_top_homology(c, basis, edge_action(pa * pb, g));
      ++r.cases;
      if (!(multiply(ma, mb) == mab)) detail::fail(r, "composition law at r=" + std::to_string(k));
    }
  }
  return r;
}

inline PropertyResult property_class_function(const PropertyConfig& cfg) {
  PropertyResult r{"class_function", true, 0, {}};
  Rng rng(cfg.seed + 7);
  for (int k = 3; k <= std::min(cfg.r, 5); ++k) {
    const Multigraph g = Multigraph::complete(k);
    const FaceComplex c = cographic_complex(g);
    const auto cc = boundary_complex(c);
    const auto basis = top_cycle_basis(c, cc);
    const ClassFunction chi = top_homology_character(k);
    const ClassFunction oracle = induced_character_oracle(k);
    ++r.cases;
    if (!(chi == oracle)) detail::fail(r, "character differs from oracle at r=" + std::to_string(k));
    if (chi.value(IntPartition(static_cast<std::size_t>(k), 1)) != Rational(basis.rank()))
      detail::fail(r, "dimension at r=" + std::to_string(k));
    for (const auto& type : integer_partitions(k))
      for (int t = 0; t < 3; ++t) {
        ++r.cases;
        const Permutation pi = random_of_type(type, rng);
        if (top_homology_trace(c, basis, g, pi) != chi.value(type))
          detail::fail(r, "r=" + std::to_string(k) + " class " + partition_key(type));
      }
  }
  return r;
}

inline PropertyResult property_nilpotent(const PropertyConfig& cfg) {
  PropertyResult r{"nilpotent", true, 0, {}};
  Rng rng(cfg.seed + 8);
  for (int t = 0; t < std::max(1, cfg.trials / 10); ++t) {
    const Multigraph g = random_connected_multigraph(rng, std::min(cfg.max_edges, 8));
    std::vector<int> genera(static_cast<std::size_t>(g.vertex_count()));
    for (auto& x : genera) x = uniform_int(rng, 0, 2);
    const GradedH1Model model(g, genera);
    const std::set<int> flips = random_nonempty_subset(rng, g.labels());
    const GradedH1Model flipped(g, genera, flips);
    std::vector<SparseRationalMatrix> ops;
    for (int e : g.labels()) {
      ops.push_back(picard_lefschetz(model, e));
      ++r.cases;
      if (!(picard_lefschetz(flipped, e) == ops.back()))
        detail::fail(r, "orientation dependence: " + detail::describe(g));
      if (!multiply(ops.back(), ops.back()).is_zero()) detail::fail(r, "N^2 != 0");
      if (fraction_free_rank(ops.back()) > 1) detail::fail(r, "rank > 1");
    }
    for (std::size_t a = 0; a < ops.size(); ++a)
      for (std::size_t b = 0; b < ops.size(); ++b)
        if (!multiply(ops[a], ops[b]).is_zero()) detail::fail(r, "N_e N_f != 0");
    if (model.dimension() <= 14) {
      const int i = uniform_int(rng, 1, 3);
      const auto cx = build_cks(model, i);
      ++r.cases;
      if (!cx.verify_commuting()) detail::fail(r, "commuting on exterior power");
    }
  }
  return r;
}

/// Im N_I = 0 exactly when |I| > i or the complement of I disconnects.
inline PropertyResult property_vanishing(const PropertyConfig&) {
  PropertyResult r{"vanishing", true, 0, {}};
  const std::vector<std::vector<int>> partitions{{1, 1}, {1, 1, 1}};
  for (const auto& parts : partitions) {
    const HitchinPartition p(2, parts);
    const auto model = GradedH1Model::from_partition(p);
    const Multigraph& g = model.graph();
    const auto m = static_cast<int>(g.edge_count());
    for (int i = 0; i <= 4; ++i)
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::set<int> I;
        CellSet removed;
        for (int e = 0; e < m; ++e)
          if (mask >> e & 1) {
            I.insert(g.edge_at(static_cast<std::size_t>(e)).label);
            removed.insert(e);
          }
        const bool predicted_zero =
            static_cast<int>(I.size()) > i || g.component_count_without(removed) > 1;
        const bool zero = image_NI(model, I, i).empty();
        ++r.cases;
        if (zero != predicted_zero)
          detail::fail(r, p.to_string() + " i=" + std::to_string(i) + " I=" + detail::describe(I));
      }
  }
  return r;
}

struct TopWeightCase {
  int genus;
  std::vector<int> parts;
  int degree;
};

/// Top-weight CKS cohomology against the cographic complex.
inline bool check_top_weight(const TopWeightCase& c, std::string* why = nullptr,
                             const HomologyOptions& hopt = {}) {
  const HitchinPartition p(c.genus, c.parts);
  const auto model = GradedH1Model::from_partition(p);
  const auto cx = build_cks(model, c.degree);
  const auto h = cks_cohomology(cx);
  const int delta = model.delta();
  const FaceComplex cog = cographic_complex(model.graph());
  const auto hom = reduced_homology(cog, hopt);
  const auto fv = cog.f_vector();
  const long long gr1 = model.middle_dimension();
  auto cell = [&](const std::string& msg) {
    if (why && why->empty()) *why = msg;
    return false;
  };
  if (!cx.verify_square_zero()) return cell("d^2 != 0");
  for (std::size_t k = 0; k < h.term_dims.size(); ++k)
    if (static_cast<int>(k) > delta && h.term_dims[k] != 0) return cell("term above delta");
  for (std::size_t k = 0; k < h.top_weight_dims.size(); ++k) {
    const long long expect_terms =
        c.degree >= delta && k < fv.size()
            ? static_cast<long long>(fv[k]) *
                  static_cast<long long>(binomial(static_cast<std::uint64_t>(gr1),
                                                  static_cast<std::uint64_t>(c.degree - delta)))
            : 0;
    if (static_cast<long long>(h.top_weight_term_dims[k]) != expect_terms)
      return cell("top-weight term dimension at degree " + std::to_string(k));
    const long long expect =
        c.degree >= delta
            ? hom.at(static_cast<int>(k) - 1) *
                  static_cast<long long>(binomial(static_cast<std::uint64_t>(gr1),
                                                  static_cast<std::uint64_t>(c.degree - delta)))
            : 0;
    if (h.top_weight_dims[k] != expect)
      return cell("top-weight cohomology at degree " + std::to_string(k));
  }
  for (std::size_t k = static_cast<std::size_t>(delta) + 1; k < h.dims.size(); ++k)
    if (h.dims[k] != 0) return cell("cohomology above delta");
  return true;
}

inline PropertyResult property_cks_top_weight(const PropertyConfig& cfg) {
  PropertyResult r{"cks_top_weight", true, 0, {}};
  const std::vector<TopWeightCase> cases{{2, {1, 1}, 0}, {2, {1, 1}, 1}, {2, {1, 1}, 2},
                                         {2, {1, 1}, 3}, {3, {1, 1}, 3}, {2, {1, 1, 1}, 3},
                                         {2, {1, 1, 1}, 4}, {2, {2, 1}, 3}};
  for (const auto& c : cases) {
    std::string why;
    ++r.cases;
    if (!check_top_weight(c, &why, detail::homology_options(cfg))) {
      std::string parts;
      for (int x : c.parts) parts += (parts.empty() ? "" : ",") + std::to_string(x);
      detail::fail(r, "g=" + std::to_string(c.genus) + " (" + parts + ") i=" + std::to_string(c.degree) + ": " + why);
    }
  }
  return r;
}

inline PropertyResult property_numerology(const PropertyConfig&) {
  PropertyResult r{"numerology", true, 0, {}};
  for (int g = 2; g <= 5; ++g)
    for (int n = 1; n <= 6; ++n)
      for (const auto& parts : integer_partitions(n)) {
        std::vector<int> desc(parts.begin(), parts.end());
        std::sort(desc.begin(), desc.end(), std::greater<>());
        const HitchinPartition p(g, desc);
        const long long h = normalized_h1(p);
        ++r.cases;
        for (long long i = 0; i <= h; ++i)
          if (local_system_rank(p, i) != local_system_rank(p, h - i))
            detail::fail(r, "rank symmetry " + p.to_string());
        if (dim_moduli(n, g) != 2 * dim_hitchin_base(n, g)) detail::fail(r, "dim_M");
        std::set<int> distinct(desc.begin(), desc.end());
        if (constant_monodromy(p) != (distinct.size() == desc.size()))
          detail::fail(r, "constant monodromy " + p.to_string());
      }
  return r;
}

inline PropertyResult property_stalk(const PropertyConfig& cfg) {
  PropertyResult r{"stalk", true, 0, {}};
  const std::vector<std::pair<int, std::vector<int>>> cases{{2, {1, 1}}, {2, {1, 1, 1}}, {3, {1, 1}},
                                                            {2, {2, 1}}, {2, {3}}};
  StalkOptions so;
  so.homology = detail::homology_options(cfg);
  for (const auto& [g, parts] : cases) {
    const HitchinPartition p(g, parts);
    const long long delta = delta_aff_formula(p);
    const long long h = normalized_h1(p);
    for (long long perv = delta; perv <= delta + h; ++perv) {
      ++r.cases;
      const auto s = stalk_dimension(p, perv, so);
      if (s.method != "homology" || s.value != local_system_rank(p, perv - delta))
        detail::fail(r, p.to_string() + " r=" + std::to_string(perv));
    }
  }
  return r;
}

struct NamedProperty {
  std::string name;
  std::function<PropertyResult(const PropertyConfig&)> run;
};

inline std::vector<NamedProperty> all_properties() {
  return {{"delta_formula", property_delta_formula},
          {"delta_relabel", property_delta_relabel},
          {"contract_delete", property_contract_delete},
          {"cycle_space", property_cycle_space},
          {"face_enumeration", property_face_enumeration},
          {"shellable", property_shellable},
          {"alexander", property_alexander},
          {"folkman", property_folkman},
          {"doubling", property_doubling},
          {"induced_group", property_induced_group},
          {"class_function", property_class_function},
          {"nilpotent", property_nilpotent},
          {"vanishing", property_vanishing},
          {"cks_top_weight", property_cks_top_weight},
          {"numerology", property_numerology},
          {"stalk", property_stalk}};
}

}  // namespace hitchin
