#pragma once

// Multigraphs with labeled edges (loops and parallel edges allowed), the dual
// graphs of generic nodal spectral curves, and cycle/cocycle space bases.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hitchin/core.hpp"

namespace hitchin {

struct Edge {
  int u = 0;
  int v = 0;
  int label = 0;

  bool is_loop() const { return u == v; }
  // canonical orientation tail -> head with tail <= head
  int tail() const { return std::min(u, v); }
  int head() const { return std::max(u, v); }
};

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), rank_(n, 0), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --components_;
    return true;
  }

  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int components_;
};

class Multigraph {
 public:
  Multigraph() : vertex_count_(1) {}

  Multigraph(int vertex_count, std::vector<Edge> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 1) throw Error("vertex_count must be positive");
    std::set<int> seen;
    for (const Edge& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= vertex_count_ || e.v >= vertex_count_)
        throw Error("edge endpoint out of range");
      if (!seen.insert(e.label).second) throw Error("duplicate edge label");
    }
  }

  /// Labels are assigned by list position.
  static Multigraph from_pairs(int vertex_count,
                               const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
      edges.push_back({pairs[i].first, pairs[i].second, static_cast<int>(i)});
    return Multigraph(vertex_count, std::move(edges));
  }

  /// Simple complete graph on r vertices, edges in lexicographic order.
  static Multigraph complete(int r) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
    return from_pairs(r, pairs);
  }

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge_at(std::size_t position) const { return edges_[position]; }

  bool has_edge(int label) const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [label](const Edge& e) { return e.label == label; });
  }

  std::size_t position_of(int label) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].label == label) return i;
    throw Error("no such edge");
  }

  int max_label() const {
    int m = -1;
    for (const Edge& e : edges_) m = std::max(m, e.label);
    return m;
  }

  std::vector<int> labels() const {
    std::vector<int> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.push_back(e.label);
    return out;
  }

  int component_count() const {
    DisjointSets ds(vertex_count_);
    for (const Edge& e : edges_) ds.unite(e.u, e.v);
    return ds.components();
  }

  bool is_connected() const { return component_count() == 1; }

  /// Components of the graph after deleting the edges at `removed` positions.
  int component_count_without(const CellSet& removed) const {
    DisjointSets ds(vertex_count_);
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (!removed.contains(static_cast<int>(i)))
        ds.unite(edges_[i].u, edges_[i].v);
    return ds.components();
  }

  /// True when the edges at `kept` positions alone connect every vertex.
  bool spanning_connected(const CellSet& kept) const {
    DisjointSets ds(vertex_count_);
    kept.for_each([&](int i) { ds.unite(edges_[i].u, edges_[i].v); });
    return ds.components() == 1;
  }

  Multigraph without_edge(int label) const {
    const std::size_t pos = position_of(label);
    std::vector<Edge> kept = edges_;
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    return Multigraph(vertex_count_, std::move(kept));
  }

  /// Multiplicity of the unordered vertex pair {a, b}.
  int multiplicity(int a, int b) const {
    int m = 0;
    for (const Edge& e : edges_)
      if (e.tail() == std::min(a, b) && e.head() == std::max(a, b)) ++m;
    return m;
  }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    if (a.vertex_count_ != b.vertex_count_ ||
        a.edges_.size() != b.edges_.size())
      return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const Edge& x = a.edges_[i];
      const Edge& y = b.edges_[i];
      if (x.u != y.u || x.v != y.v || x.label != y.label) return false;
    }
    return true;
  }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
};

/// First Betti number |E| - |V| + #components (the affine delta invariant).
inline int delta_aff(const Multigraph& g) {
  return static_cast<int>(g.edge_count()) - g.vertex_count() +
         g.component_count();
}

class HitchinPartition {
 public:
  HitchinPartition(int genus, std::vector<int> parts)
      : genus_(genus), parts_(std::move(parts)) {
    if (genus_ < 2) throw Error("genus must be at least 2");
    if (parts_.empty()) throw Error("partition must have at least one part");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw Error("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw Error("partition parts must be non-increasing");
    }
  }

  /// Accepts parts in any order.
  static HitchinPartition sorted(int genus, std::vector<int> parts) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return HitchinPartition(genus, std::move(parts));
  }

  int genus() const { return genus_; }
  const std::vector<int>& parts() const { return parts_; }
  int n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int k() const { return static_cast<int>(parts_.size()); }

  /// alpha_j = #{i : n_i = j} for j = 1..n (index 0 unused).
  std::vector<int> multiplicities() const {
    std::vector<int> alpha(static_cast<std::size_t>(n()) + 1, 0);
    for (int p : parts_) ++alpha[static_cast<std::size_t>(p)];
    return alpha;
  }

  /// Sizes of the blocks of equal parts, in the order the parts appear.
  std::vector<int> equal_part_blocks() const {
    std::vector<int> blocks;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i == 0 || parts_[i] != parts_[i - 1])
        blocks.push_back(1);
      else
        ++blocks.back();
    }
    return blocks;
  }

  bool all_parts_distinct() const {
    for (std::size_t i = 1; i < parts_.size(); ++i)
      if (parts_[i] == parts_[i - 1]) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

 private:
  int genus_;
  std::vector<int> parts_;
};

/// Dual graph of a generic nodal spectral curve in the stratum of `p`: one
/// vertex per part, n_i n_j (2g - 2) parallel edges between parts i < j.
/// Labels follow the lexicographic order of (i, j, copy).
inline Multigraph build_dual_graph(const HitchinPartition& p) {
  const int k = p.k();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const int copies = p.parts()[i] * p.parts()[j] * (2 * p.genus() - 2);
      for (int c = 0; c < copies; ++c) pairs.emplace_back(i, j);
    }
  return Multigraph::from_pairs(k, pairs);
}

struct DoubledGraph {
  Multigraph graph;
  std::map<int, int> copy_of;  // original label -> label of its added copy
};

inline DoubledGraph double_edges(const Multigraph& g,
                                 const std::set<int>& subset) {
  std::vector<Edge> edges = g.edges();
  DoubledGraph out;
  int next = g.max_label() + 1;
  for (int label : subset) {
    const Edge& e = g.edge_at(g.position_of(label));
    edges.push_back({e.u, e.v, next});
    out.copy_of[label] = next;
    ++next;
  }
  out.graph = Multigraph(g.vertex_count(), std::move(edges));
  return out;
}

/// Identifies the endpoints of `label` and removes it. Vertex indices above
/// the absorbed endpoint shift down by one. Contracting a loop deletes it.
inline Multigraph contract_edge(const Multigraph& g, int label) {
  const Edge target = g.edge_at(g.position_of(label));
  if (target.is_loop()) return g.without_edge(label);
  const int keep = target.tail();
  const int gone = target.head();
  auto remap = [&](int x) {
    if (x == gone) return keep;
    return x > gone ? x - 1 : x;
  };
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (e.label == label) continue;
    edges.push_back({remap(e.u), remap(e.v), e.label});
  }
  return Multigraph(g.vertex_count() - 1, std::move(edges));
}

/// Fundamental cycles of a lowest-label spanning forest. `cycles[c]` is a
/// dense integer vector over edge positions with +1 on its chord, written in
/// the edge orientation in use. The dual basis of H^1 is given by the
/// classes of the chord duals, so the class of an edge dual e* has
/// coordinates (cycles[c][e])_c.
struct CycleSpaceBasis {
  std::vector<int> forest_labels;
  std::vector<int> chord_labels;
  std::vector<std::vector<int>> cycles;
  std::vector<int> orientation;  // +1 canonical tail->head, -1 reversed

  std::size_t rank() const { return cycles.size(); }

  /// Row c, column e: coordinate of [e*] on the c-th basis class of H^1.
  std::vector<std::vector<int>> cocycle_projection() const { return cycles; }
};

/// Cycles are chosen in the canonical orientation. Edges listed in `flips`
/// are then reversed: the same cycles are re-expressed in the reversed edge
/// basis, so their entries on flipped edges change sign.
inline CycleSpaceBasis cycle_space(const Multigraph& g,
                                   const std::set<int>& flips = {}) {
  const std::size_t m = g.edge_count();
  CycleSpaceBasis basis;
  basis.orientation.assign(m, 1);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.edge_at(a).label < g.edge_at(b).label;
  });

  DisjointSets ds(g.vertex_count());
  std::vector<bool> in_forest(m, false);
  // forest adjacency: (neighbor, edge position)
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(
      static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t pos : order) {
    const Edge& e = g.edge_at(pos);
    if (ds.unite(e.u, e.v)) {
      in_forest[pos] = true;
      basis.forest_labels.push_back(e.label);
      adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, pos);
      adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, pos);
    }
  }

  for (std::size_t pos : order) {
    if (in_forest[pos]) continue;
    const Edge& chord = g.edge_at(pos);
    std::vector<int> z(m, 0);
    z[pos] = 1;
    if (!chord.is_loop()) {
      // chord runs tail -> head; close the cycle along the forest path
      // head -> tail
      const int start = chord.tail(), finish = chord.head();
      std::vector<std::pair<int, std::size_t>> parent(
          static_cast<std::size_t>(g.vertex_count()), {-1, 0});
      std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
      std::vector<int> stack{finish};
      seen[static_cast<std::size_t>(finish)] = true;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        if (x == start) break;
        for (auto [y, epos] : adj[static_cast<std::size_t>(x)]) {
          if (seen[static_cast<std::size_t>(y)]) continue;
          seen[static_cast<std::size_t>(y)] = true;
          parent[static_cast<std::size_t>(y)] = {x, epos};
          stack.push_back(y);
        }
      }
      for (int x = start; x != finish;) {
        auto [prev, epos] = parent[static_cast<std::size_t>(x)];
        // traversed prev -> x
        z[epos] += (prev == g.edge_at(epos).tail()) ? 1 : -1;
        x = prev;
      }
    }
    basis.chord_labels.push_back(chord.label);
    basis.cycles.push_back(std::move(z));
  }

  for (int label : flips) {
    const std::size_t pos = g.position_of(label);
    basis.orientation[pos] = -1;
    for (auto& z : basis.cycles) z[pos] = -z[pos];
  }
  return basis;
}

/// Boundary of an integer edge chain as a vector over vertices.
inline std::vector<int> chain_boundary(const Multigraph& g,
                                       const std::vector<int>& chain,
                                       const std::vector<int>& orientation) {
  std::vector<int> out(static_cast<std::size_t>(g.vertex_count()), 0);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i] == 0) continue;
    const Edge& e = g.edge_at(i);
    int from = e.tail(), to = e.head();
    if (orientation[i] < 0) std::swap(from, to);
    out[static_cast<std::size_t>(to)] += chain[i];
    out[static_cast<std::size_t>(from)] -= chain[i];
  }
  return out;
}

}  // namespace hitchin
