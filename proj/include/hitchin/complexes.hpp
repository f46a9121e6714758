#pragma once

// The cographic (bond matroid) complex, the non-spanning complex, and the
// order complex of the proper part of the partition lattice, all presented
// as explicit face lists.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hitchin/core.hpp"
#include "hitchin/multigraph.hpp"

namespace hitchin {

enum class ComplexKind { Cographic, NonSpanning, PartitionOrder };

inline std::string to_string(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::Cographic:
      return "cographic";
    case ComplexKind::NonSpanning:
      return "nonspanning";
    case ComplexKind::PartitionOrder:
      return "flats";
  }
  return "unknown";
}

/// Abstract simplicial complex on ground-set positions 0..m-1. `levels[k]`
/// holds the faces with k cells in lexicographic order; level 0 is the
/// empty face, so reduced homology and the degree-0 CKS term line up.
class FaceComplex {
 public:
  FaceComplex() = default;
  FaceComplex(ComplexKind kind, std::vector<int> ground_set,
              std::vector<std::string> cell_names,
              std::vector<std::vector<CellSet>> levels)
      : kind_(kind),
        ground_set_(std::move(ground_set)),
        cell_names_(std::move(cell_names)),
        levels_(std::move(levels)) {
    if (levels_.empty()) levels_.push_back({CellSet{}});
    for (auto& level : levels_)
      std::sort(level.begin(), level.end(), CellSet::lex_less);
    while (levels_.size() > 1 && levels_.back().empty()) levels_.pop_back();
  }

  ComplexKind kind() const { return kind_; }
  const std::vector<int>& ground_set() const { return ground_set_; }
  const std::vector<std::string>& cell_names() const { return cell_names_; }
  std::size_t ground_size() const { return ground_set_.size(); }

  /// Largest face cardinality.
  int max_cardinality() const { return static_cast<int>(levels_.size()) - 1; }
  /// Geometric dimension; -1 for the complex {empty face}.
  int dimension() const { return max_cardinality() - 1; }

  const std::vector<CellSet>& faces(int cardinality) const {
    static const std::vector<CellSet> none;
    if (cardinality < 0 || cardinality >= static_cast<int>(levels_.size()))
      return none;
    return levels_[static_cast<std::size_t>(cardinality)];
  }

  std::size_t face_count() const {
    std::size_t n = 0;
    for (const auto& l : levels_) n += l.size();
    return n;
  }

  std::optional<std::size_t> index_of(const CellSet& face) const {
    const auto& level = faces(face.size());
    auto it = std::lower_bound(level.begin(), level.end(), face,
                               CellSet::lex_less);
    if (it == level.end() || !(*it == face)) return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
  }

  bool contains(const CellSet& face) const { return index_of(face).has_value(); }

  /// Counts per cardinality, starting with the single empty face.
  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& l : levels_) f.push_back(l.size());
    return f;
  }

  bool is_downward_closed() const {
    for (int k = 1; k <= max_cardinality(); ++k)
      for (const CellSet& face : faces(k)) {
        bool ok = true;
        face.for_each([&](int c) {
          CellSet facet = face;
          facet.erase(c);
          if (!contains(facet)) ok = false;
        });
        if (!ok) return false;
      }
    return true;
  }

  /// Labels of the cells of a face, in increasing position order.
  std::vector<int> labels_of(const CellSet& face) const {
    std::vector<int> out;
    face.for_each([&](int c) { out.push_back(ground_set_[static_cast<std::size_t>(c)]); });
    return out;
  }

 private:
  ComplexKind kind_ = ComplexKind::Cographic;
  std::vector<int> ground_set_;
  std::vector<std::string> cell_names_;
  std::vector<std::vector<CellSet>> levels_{{CellSet{}}};
};

struct EnumerationOptions {
  int max_cells = 24;
  unsigned threads = 1;
};

/// Level-by-level enumeration of a downward-closed family on m cells: a
/// face with k+1 cells is generated only from its k-cell prefix, so
/// non-faces are never extended.
template <class Predicate>
std::vector<std::vector<CellSet>> enumerate_downward_closed(
    int m, Predicate&& is_face, unsigned threads) {
  std::vector<std::vector<CellSet>> levels{{CellSet{}}};
  while (true) {
    const auto& current = levels.back();
    std::vector<std::vector<CellSet>> found(current.size());
    parallel_for(current.size(), threads, [&](std::size_t i) {
      const CellSet& base = current[i];
      for (int c = base.max() + 1; c < m; ++c) {
        CellSet next = base;
        next.insert(c);
        if (is_face(next)) found[i].push_back(next);
      }
    });
    std::vector<CellSet> level;
    for (auto& f : found)
      level.insert(level.end(), f.begin(), f.end());
    if (level.empty()) break;
    levels.push_back(std::move(level));
  }
  return levels;
}

namespace detail {

inline std::vector<std::string> edge_names(const Multigraph& g) {
  std::vector<std::string> names;
  for (const Edge& e : g.edges()) names.push_back("e" + std::to_string(e.label));
  return names;
}

inline void check_enumerable(const Multigraph& g, const EnumerationOptions& opt) {
  if (static_cast<int>(g.edge_count()) > opt.max_cells ||
      static_cast<int>(g.edge_count()) > CellSet::kCapacity)
    throw Error("too many edges for face enumeration");
}

}  // namespace detail

/// Edge subsets whose removal leaves the graph connected.
inline FaceComplex cographic_complex(const Multigraph& g,
                                     const EnumerationOptions& opt = {}) {
  if (!g.is_connected()) throw Error("graph must be connected");
  detail::check_enumerable(g, opt);
  auto levels = enumerate_downward_closed(
      static_cast<int>(g.edge_count()),
      [&](const CellSet& removed) { return g.component_count_without(removed) == 1; },
      opt.threads);
  return FaceComplex(ComplexKind::Cographic, g.labels(), detail::edge_names(g),
                     std::move(levels));
}

/// Edge subsets that do not connect all vertices.
inline FaceComplex nonspanning_complex(const Multigraph& g,
                                       const EnumerationOptions& opt = {}) {
  if (!g.is_connected()) throw Error("graph must be connected");
  if (g.vertex_count() < 2) throw Error("graph must have at least two vertices");
  detail::check_enumerable(g, opt);
  auto levels = enumerate_downward_closed(
      static_cast<int>(g.edge_count()),
      [&](const CellSet& kept) { return !g.spanning_connected(kept); },
      opt.threads);
  return FaceComplex(ComplexKind::NonSpanning, g.labels(), detail::edge_names(g),
                     std::move(levels));
}

/// Set partition of {0..r-1} as a restricted growth string.
class SetPartition {
 public:
  explicit SetPartition(std::vector<int> block_of) : block_of_(std::move(block_of)) {
    normalize();
  }

  int size() const { return static_cast<int>(block_of_.size()); }
  int block_count() const {
    return block_of_.empty() ? 0 : *std::max_element(block_of_.begin(), block_of_.end()) + 1;
  }
  const std::vector<int>& block_of() const { return block_of_; }

  /// Every block of *this lies in a block of `coarser`.
  bool refines(const SetPartition& coarser) const {
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        if (block_of_[i] == block_of_[j] && coarser.block_of_[i] != coarser.block_of_[j])
          return false;
    return true;
  }

  /// Image under the element permutation i -> perm[i].
  SetPartition permuted(const std::vector<int>& perm) const {
    std::vector<int> image(block_of_.size());
    for (std::size_t i = 0; i < block_of_.size(); ++i)
      image[static_cast<std::size_t>(perm[i])] = block_of_[i];
    return SetPartition(std::move(image));
  }

  std::string to_string() const {
    std::string s;
    for (int b = 0; b < block_count(); ++b) {
      s += '{';
      bool first = true;
      for (int i = 0; i < size(); ++i)
        if (block_of_[static_cast<std::size_t>(i)] == b) {
          if (!first) s += ',';
          s += std::to_string(i);
          first = false;
        }
      s += '}';
    }
    return s;
  }

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  // relabel blocks in order of first occurrence
  void normalize() {
    std::vector<int> map;
    int next = 0;
    for (int& b : block_of_) {
      if (b < 0) throw Error("negative block label");
      if (b >= static_cast<int>(map.size())) map.resize(static_cast<std::size_t>(b) + 1, -1);
      if (map[static_cast<std::size_t>(b)] < 0) map[static_cast<std::size_t>(b)] = next++;
      b = map[static_cast<std::size_t>(b)];
    }
  }

  std::vector<int> block_of_;
};

/// All set partitions of {0..r-1} in restricted-growth-string order.
inline std::vector<SetPartition> set_partitions(int r) {
  std::vector<SetPartition> out;
  std::vector<int> rgs(static_cast<std::size_t>(r), 0);
  std::function<void(int, int)> rec = [&](int pos, int max_block) {
    if (pos == r) {
      out.emplace_back(rgs);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      rgs[static_cast<std::size_t>(pos)] = b;
      rec(pos + 1, std::max(max_block, b));
    }
  };
  if (r == 0) return {SetPartition({})};
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

/// Partitions strictly between discrete and trivial, finest first; this is
/// the ground-set order of the partition order complex.
inline std::vector<SetPartition> proper_partitions(int r) {
  if (r < 2) throw Error("r must be at least 2");
  std::vector<SetPartition> all = set_partitions(r);
  std::vector<SetPartition> proper;
  for (auto& p : all)
    if (p.block_count() != 1 && p.block_count() != r) proper.push_back(p);
  std::stable_sort(proper.begin(), proper.end(),
                   [](const SetPartition& a, const SetPartition& b) {
                     return a.block_count() > b.block_count();
                   });
  return proper;
}

/// Order complex of the proper part of the partition lattice of {0..r-1}:
/// faces are strict chains.
inline FaceComplex partition_order_complex(int r) {
  const std::vector<SetPartition> elems = proper_partitions(r);
  const int m = static_cast<int>(elems.size());
  if (m > CellSet::kCapacity) throw Error("r too large for the partition order complex");
  std::vector<std::vector<int>> coarser(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (elems[static_cast<std::size_t>(a)].block_count() >
              elems[static_cast<std::size_t>(b)].block_count() &&
          elems[static_cast<std::size_t>(a)].refines(elems[static_cast<std::size_t>(b)]))
        coarser[static_cast<std::size_t>(a)].push_back(b);

  std::vector<std::vector<CellSet>> levels{{CellSet{}}};
  std::function<void(int, CellSet&, int)> extend = [&](int top, CellSet& chain, int size) {
    if (static_cast<int>(levels.size()) <= size) levels.emplace_back();
    levels[static_cast<std::size_t>(size)].push_back(chain);
    for (int b : coarser[static_cast<std::size_t>(top)]) {
      chain.insert(b);
      extend(b, chain, size + 1);
      chain.erase(b);
    }
  };
  for (int a = 0; a < m; ++a) {
    CellSet chain;
    chain.insert(a);
    extend(a, chain, 1);
  }
  std::vector<int> ground(static_cast<std::size_t>(m));
  std::vector<std::string> names;
  for (int a = 0; a < m; ++a) {
    ground[static_cast<std::size_t>(a)] = a;
    names.push_back(elems[static_cast<std::size_t>(a)].to_string());
  }
  return FaceComplex(ComplexKind::PartitionOrder, std::move(ground), std::move(names),
                     std::move(levels));
}

inline std::vector<std::size_t> complex_f_vector(const FaceComplex& c) {
  return c.f_vector();
}

}  // namespace hitchin
