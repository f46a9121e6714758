#pragma once

// Graded model of the limiting mixed Hodge structure along a boundary
// stratum and the Cattani-Kaplan-Schmid complex built from its nilpotent
// logarithms of monodromy.
//
// V = W0 (+) Gr1 (+) Gr2 with W0 = H^1(Gamma), Gr2 = H_1(Gamma) (Tate
// twisted), Gr1 = (+)_i H^1 of the component normalizations. For an edge e,
// N_e sends a cycle z in Gr2 to <e*, z> [e*] in W0 and vanishes on W0 and
// Gr1.

#include <algorithm>
#include <cstddef>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hitchin/complexes.hpp"
#include "hitchin/core.hpp"
#include "hitchin/exterior.hpp"
#include "hitchin/multigraph.hpp"
#include "hitchin/rank.hpp"
#include "hitchin/sparse.hpp"

namespace hitchin {

class GradedH1Model {
 public:
  GradedH1Model(Multigraph graph, std::vector<int> component_genera,
                const std::set<int>& flips = {})
      : graph_(std::move(graph)), genera_(std::move(component_genera)) {
    if (!graph_.is_connected()) throw Error("graph must be connected");
    if (static_cast<int>(genera_.size()) != graph_.vertex_count())
      throw Error("one genus per vertex required");
    for (int g : genera_)
      if (g < 0) throw Error("component genus must be non-negative");
    cycles_ = cycle_space(graph_, flips);
    middle_ = 0;
    for (int g : genera_) middle_ += 2 * g;
  }

  /// Component i of a generic curve in the stratum has genus
  /// n_i^2 (g - 1) + 1.
  static GradedH1Model from_partition(const HitchinPartition& p,
                                      const std::set<int>& flips = {}) {
    std::vector<int> genera;
    for (int ni : p.parts()) genera.push_back(ni * ni * (p.genus() - 1) + 1);
    return GradedH1Model(build_dual_graph(p), std::move(genera), flips);
  }

  const Multigraph& graph() const { return graph_; }
  const CycleSpaceBasis& cycles() const { return cycles_; }
  const std::vector<int>& component_genera() const { return genera_; }

  int delta() const { return static_cast<int>(cycles_.rank()); }
  int middle_dimension() const { return middle_; }
  int dimension() const { return 2 * delta() + middle_; }
  int arithmetic_genus() const { return middle_ / 2 + delta(); }

  int w0_offset() const { return 0; }
  int gr1_offset() const { return delta(); }
  int gr2_offset() const { return delta() + middle_; }

  /// Weight of basis vector b: 0 on W0, 1 on Gr1, 2 on Gr2.
  int weight(int b) const {
    if (b < gr1_offset()) return 0;
    if (b < gr2_offset()) return 1;
    return 2;
  }

  /// Bit mask of the basis vectors of each weight.
  std::uint64_t weight_mask(int w) const {
    std::uint64_t m = 0;
    for (int b = 0; b < dimension() && b < 64; ++b)
      if (weight(b) == w) m |= std::uint64_t{1} << b;
    return m;
  }

 private:
  Multigraph graph_;
  std::vector<int> genera_;
  CycleSpaceBasis cycles_;
  int middle_ = 0;
};

/// Columns of N_e on the model basis. Column gr2_offset + c is
/// a_c * sum_{c'} a_{c'} w0_{c'} with a_c = <e*, z_c>.
inline OperatorColumns picard_lefschetz_columns(const GradedH1Model& model,
                                                int edge_label) {
  const std::size_t pos = model.graph().position_of(edge_label);
  const int delta = model.delta();
  OperatorColumns cols(static_cast<std::size_t>(model.dimension()));
  std::vector<int> a(static_cast<std::size_t>(delta));
  for (int c = 0; c < delta; ++c)
    a[static_cast<std::size_t>(c)] = model.cycles().cycles[static_cast<std::size_t>(c)][pos];
  for (int c = 0; c < delta; ++c) {
    if (a[static_cast<std::size_t>(c)] == 0) continue;
    SparseVector<Integer> col;
    for (int cp = 0; cp < delta; ++cp) {
      const int v = a[static_cast<std::size_t>(c)] * a[static_cast<std::size_t>(cp)];
      if (v) col.emplace_back(model.w0_offset() + cp, Integer(v));
    }
    cols[static_cast<std::size_t>(model.gr2_offset() + c)] = std::move(col);
  }
  return cols;
}

inline SparseRationalMatrix picard_lefschetz(const GradedH1Model& model, int edge_label) {
  const auto cols = picard_lefschetz_columns(model, edge_label);
  const auto d = static_cast<std::size_t>(model.dimension());
  SparseRationalMatrix m(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    SparseVector<Rational> col;
    for (const auto& [r, x] : cols[c]) col.emplace_back(r, Rational(x));
    m.set_column(c, std::move(col));
  }
  return m;
}

struct CKSOptions {
  std::size_t bound = ExteriorBasis::kDefaultBound;
  unsigned threads = 1;
  std::uint64_t seed = 2024;
};

namespace detail {

inline int monomial_weight(const GradedH1Model& model, std::uint64_t m) {
  const std::uint64_t w1 = model.weight_mask(1), w2 = model.weight_mask(2);
  return std::popcount(m & w1) + 2 * std::popcount(m & w2);
}

inline std::vector<SparseVector<Integer>> all_monomials(const ExteriorBasis& b) {
  std::vector<SparseVector<Integer>> out;
  out.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    out.push_back({{static_cast<int>(i), Integer(1)}});
  return out;
}

inline std::vector<SparseVector<Integer>> apply_all(const OperatorColumns& op,
                                                    const ExteriorBasis& b,
                                                    const std::vector<SparseVector<Integer>>& xs,
                                                    unsigned threads) {
  std::vector<SparseVector<Integer>> out(xs.size());
  parallel_for(xs.size(), threads,
               [&](std::size_t i) { out[i] = apply_derivation(op, b, xs[i]); });
  std::erase_if(out, [](const auto& v) { return v.empty(); });
  return out;
}

}  // namespace detail

/// Canonical basis of Im(N_I) inside the i-th exterior power, computed by
/// applying the composite of the N_e (e in I) to every monomial.
inline std::vector<SparseVector<Integer>> image_NI(const GradedH1Model& model,
                                                   const std::set<int>& subset, int degree,
                                                   const CKSOptions& opt = {}) {
  const ExteriorBasis basis(model.dimension(), degree, opt.bound);
  for (int label : subset) model.graph().position_of(label);
  if (static_cast<int>(subset.size()) > degree) return {};
  std::vector<SparseVector<Integer>> vecs = detail::all_monomials(basis);
  for (int label : subset) {
    vecs = detail::apply_all(picard_lefschetz_columns(model, label), basis, vecs, opt.threads);
    if (vecs.empty()) return {};
  }
  return row_echelon_basis(std::move(vecs));
}

/// One nonzero summand Im(N_I) of the complex. Every basis vector is
/// homogeneous; its twisted weight is its model weight plus 2|I|.
struct CKSTerm {
  std::vector<int> positions;  // edge positions of I, increasing
  std::vector<int> labels;
  std::vector<SparseVector<Integer>> basis;
  std::vector<int> twisted_weights;
};

class CKSComplexInstance {
 public:
  CKSComplexInstance() = default;
  CKSComplexInstance(const GradedH1Model& model, int degree, const CKSOptions& opt)
      : model_(&model), degree_(degree), exterior_(model.dimension(), degree, opt.bound) {
    const int m = static_cast<int>(model.graph().edge_count());
    for (int pos = 0; pos < m; ++pos)
      ops_.push_back(picard_lefschetz_columns(model, model.graph().edge_at(static_cast<std::size_t>(pos)).label));

    // degree 0: the whole exterior power
    terms_.emplace_back();
    if (exterior_.size() > 0) terms_[0].push_back(make_term({}, detail::all_monomials(exterior_)));

    // Im N_{I + r} = N_r(Im N_I) for r larger than max I
    for (int k = 0; k < degree && k < m && !terms_[static_cast<std::size_t>(k)].empty(); ++k) {
      const auto& prev = terms_[static_cast<std::size_t>(k)];
      std::vector<std::pair<const CKSTerm*, int>> jobs;
      for (const auto& t : prev) {
        const int start = t.positions.empty() ? 0 : t.positions.back() + 1;
        for (int r = start; r < m; ++r) jobs.emplace_back(&t, r);
      }
      std::vector<std::optional<CKSTerm>> built(jobs.size());
      parallel_for(jobs.size(), opt.threads, [&](std::size_t j) {
        const auto [t, r] = jobs[j];
        auto imgs = detail::apply_all(ops_[static_cast<std::size_t>(r)], exterior_, t->basis, 1);
        if (imgs.empty()) return;
        std::vector<int> positions = t->positions;
        positions.push_back(r);
        built[j] = make_term(std::move(positions), row_echelon_basis(std::move(imgs)));
      });
      std::vector<CKSTerm> level;
      for (auto& b : built)
        if (b) level.push_back(std::move(*b));
      if (level.empty()) break;
      terms_.push_back(std::move(level));
    }
    for (std::size_t k = 0; k < terms_.size(); ++k)
      for (std::size_t t = 0; t < terms_[k].size(); ++t)
        index_[terms_[k][t].positions] = t;
  }

  const GradedH1Model& model() const { return *model_; }
  int exterior_degree() const { return degree_; }
  const ExteriorBasis& exterior() const { return exterior_; }
  std::size_t ambient_dimension() const { return exterior_.size(); }

  /// Highest degree with a nonzero term.
  int top_degree() const { return static_cast<int>(terms_.size()) - 1; }
  const std::vector<CKSTerm>& terms(int k) const {
    static const std::vector<CKSTerm> none;
    if (k < 0 || k >= static_cast<int>(terms_.size())) return none;
    return terms_[static_cast<std::size_t>(k)];
  }

  std::size_t term_dimension(int k, std::optional<int> weight = std::nullopt) const {
    std::size_t n = 0;
    for (const auto& t : terms(k))
      for (int w : t.twisted_weights)
        if (!weight || w == *weight) ++n;
    return n;
  }

  std::set<int> twisted_weights() const {
    std::set<int> out;
    for (const auto& level : terms_)
      for (const auto& t : level) out.insert(t.twisted_weights.begin(), t.twisted_weights.end());
    return out;
  }

  /// d^k restricted to twisted weight `weight` (all weights when empty).
  /// Rows are indexed by (term of degree k+1) x (monomial).
  SparseMatrix<Integer> differential(int k, std::optional<int> weight = std::nullopt) const {
    const auto& src = terms(k);
    const auto& dst = terms(k + 1);
    const std::uint64_t ambient = ambient_dimension();
    const std::uint64_t rows = ambient * dst.size();
    if (rows > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
      throw Error("exterior degree too large");
    std::vector<const SparseVector<Integer>*> cols;
    std::vector<const CKSTerm*> owner;
    for (const auto& t : src)
      for (std::size_t b = 0; b < t.basis.size(); ++b)
        if (!weight || t.twisted_weights[b] == *weight) {
          cols.push_back(&t.basis[b]);
          owner.push_back(&t);
        }
    SparseMatrix<Integer> d(static_cast<std::size_t>(rows), cols.size());
    std::vector<SparseVector<Integer>> out(cols.size());
    const int m = static_cast<int>(ops_.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto& I = owner[c]->positions;
      for (int r = 0; r < m; ++r) {
        if (std::binary_search(I.begin(), I.end(), r)) continue;
        std::vector<int> J = I;
        J.insert(std::upper_bound(J.begin(), J.end(), r), r);
        auto y = apply_derivation(ops_[static_cast<std::size_t>(r)], exterior_, *cols[c]);
        const auto it = index_.find(J);
        if (it == index_.end()) {
          if (!y.empty()) throw Error("image escapes the CKS term");
          continue;
        }
        const auto slot = static_cast<std::uint64_t>(it->second);
        const long position = std::lower_bound(J.begin(), J.end(), r) - J.begin();
        const bool negative = position % 2 == 1;
        for (auto& [idx, x] : y)
          out[c].emplace_back(static_cast<int>(slot * ambient + static_cast<std::uint64_t>(idx)),
                              negative ? Integer(-x) : x);
      }
    }
    for (std::size_t c = 0; c < cols.size(); ++c) d.set_column(c, std::move(out[c]));
    return d;
  }

  /// d^{k+1} d^k = 0 on every basis vector of every term: for r < s
  /// outside I the two paths into I + {r, s} must cancel.
  bool verify_square_zero() const {
    const int m = static_cast<int>(ops_.size());
    auto sign_in = [](const std::vector<int>& set, int x) {
      const long pos = std::lower_bound(set.begin(), set.end(), x) - set.begin();
      return pos % 2 == 0 ? 1 : -1;
    };
    auto with = [](std::vector<int> set, int x) {
      set.insert(std::upper_bound(set.begin(), set.end(), x), x);
      return set;
    };
    for (const auto& level : terms_)
      for (const auto& t : level)
        for (int r = 0; r < m; ++r) {
          if (std::binary_search(t.positions.begin(), t.positions.end(), r)) continue;
          for (int s = r + 1; s < m; ++s) {
            if (std::binary_search(t.positions.begin(), t.positions.end(), s)) continue;
            const auto Ir = with(t.positions, r), Is = with(t.positions, s);
            const auto J = with(Ir, s);
            const int first = sign_in(Ir, r) * sign_in(J, s);
            const int second = sign_in(Is, s) * sign_in(J, r);
            for (const auto& x : t.basis) {
              auto a = apply_derivation(ops_[static_cast<std::size_t>(s)], exterior_,
                                        apply_derivation(ops_[static_cast<std::size_t>(r)], exterior_, x));
              auto b = apply_derivation(ops_[static_cast<std::size_t>(r)], exterior_,
                                        apply_derivation(ops_[static_cast<std::size_t>(s)], exterior_, x));
              if (!axpy_merge(a, Integer(first), b, Integer(second)).empty()) return false;
            }
          }
        }
    return true;
  }

  /// N_r N_s = N_s N_r on the whole exterior power.
  bool verify_commuting(std::size_t sample_stride = 1) const {
    const auto monos = detail::all_monomials(exterior_);
    for (std::size_t r = 0; r < ops_.size(); ++r)
      for (std::size_t s = r + 1; s < ops_.size(); ++s)
        for (std::size_t i = 0; i < monos.size(); i += sample_stride) {
          auto a = apply_derivation(ops_[r], exterior_,
                                    apply_derivation(ops_[s], exterior_, monos[i]));
          auto b = apply_derivation(ops_[s], exterior_,
                                    apply_derivation(ops_[r], exterior_, monos[i]));
          if (a != b) return false;
        }
    return true;
  }

 private:
  CKSTerm make_term(std::vector<int> positions, std::vector<SparseVector<Integer>> basis) const {
    CKSTerm t;
    for (int p : positions) t.labels.push_back(model_->graph().edge_at(static_cast<std::size_t>(p)).label);
    t.positions = std::move(positions);
    t.basis = std::move(basis);
    const int shift = 2 * static_cast<int>(t.positions.size());
    for (const auto& v : t.basis) {
      const int w = detail::monomial_weight(*model_, exterior_.monomial(static_cast<std::size_t>(v[0].first)));
      for (const auto& [idx, x] : v)
        if (detail::monomial_weight(*model_, exterior_.monomial(static_cast<std::size_t>(idx))) != w)
          throw Error("inhomogeneous CKS basis vector");
      t.twisted_weights.push_back(w + shift);
    }
    return t;
  }

  const GradedH1Model* model_ = nullptr;
  int degree_ = 0;
  ExteriorBasis exterior_{0, 0};
  std::vector<OperatorColumns> ops_;
  std::vector<std::vector<CKSTerm>> terms_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// The model must outlive the returned complex.
inline CKSComplexInstance build_cks(const GradedH1Model& model, int degree,
                                    const CKSOptions& opt = {}) {
  if (degree < 0) throw Error("exterior degree must be non-negative");
  return CKSComplexInstance(model, degree, opt);
}

struct CKSCohomology {
  int exterior_degree = 0;
  int delta = 0;
  int top_weight = 0;  // i + delta; the piece is zero when i < delta
  std::vector<std::size_t> term_dims;
  std::vector<long long> dims;  // total cohomology per degree
  std::vector<std::size_t> top_weight_term_dims;
  std::vector<long long> top_weight_dims;
  std::map<int, std::vector<long long>> by_weight;
  bool modular_agree = true;
};

/// The differential preserves twisted weight, so the complex splits and
/// each weight piece is ranked separately.
inline CKSCohomology cks_cohomology(const CKSComplexInstance& cx, const CKSOptions& opt = {}) {
  CKSCohomology out;
  out.exterior_degree = cx.exterior_degree();
  out.delta = cx.model().delta();
  out.top_weight = out.exterior_degree + out.delta;
  const int top = std::max(cx.top_degree(), 0);
  const std::size_t n = static_cast<std::size_t>(top) + 1;
  out.term_dims.assign(n, 0);
  out.dims.assign(n, 0);
  for (int w : cx.twisted_weights()) {
    std::vector<std::size_t> rank(n + 1, 0);  // rank[k] = rank d^k
    for (int k = 0; k < top; ++k) {
      const auto report = exact_rank(cx.differential(k, w), RankOptions{opt.seed, opt.threads});
      rank[static_cast<std::size_t>(k)] = report.rank;
      out.modular_agree = out.modular_agree && report.modular_agree;
    }
    std::vector<long long> h(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto dim = cx.term_dimension(static_cast<int>(k), w);
      h[k] = static_cast<long long>(dim) - static_cast<long long>(rank[k]) -
             (k > 0 ? static_cast<long long>(rank[k - 1]) : 0);
      out.term_dims[k] += dim;
      out.dims[k] += h[k];
    }
    out.by_weight[w] = h;
  }
  out.top_weight_term_dims.assign(n, 0);
  out.top_weight_dims.assign(n, 0);
  if (auto it = out.by_weight.find(out.top_weight); it != out.by_weight.end()) {
    out.top_weight_dims = it->second;
    for (std::size_t k = 0; k < n; ++k)
      out.top_weight_term_dims[k] = cx.term_dimension(static_cast<int>(k), out.top_weight);
  }
  return out;
}

/// Action of a vertex permutation on the model basis. It acts on Gr2 =
/// H_1(Gamma) through oriented edges, on W0 = H^1(Gamma) contragrediently,
/// and on Gr1 by moving the block of vertex v to the block of pi(v).
/// `edge_images[pos]` is the edge position the automorphism sends pos to.
inline OperatorColumns model_automorphism(const GradedH1Model& model,
                                          const std::vector<int>& vertex_images,
                                          const std::vector<int>& edge_images) {
  const Multigraph& g = model.graph();
  const auto& cyc = model.cycles();
  const std::size_t b = cyc.rank();
  std::vector<int> chord_slot(g.edge_count(), -1);
  for (std::size_t c = 0; c < b; ++c)
    chord_slot[g.position_of(cyc.chord_labels[c])] = static_cast<int>(c);

  // P[row][col]: coordinate of g(z_col) on z_row
  std::vector<std::vector<Rational>> P(b, std::vector<Rational>(b, 0));
  for (std::size_t c = 0; c < b; ++c) {
    std::vector<int> image(g.edge_count(), 0);
    for (std::size_t pos = 0; pos < g.edge_count(); ++pos) {
      const int x = cyc.cycles[c][pos];
      if (!x) continue;
      const Edge& e = g.edge_at(pos);
      const auto tgt = static_cast<std::size_t>(edge_images[pos]);
      const Edge& f = g.edge_at(tgt);
      // orientation in use on each edge: canonical times the flip sign
      const int from = cyc.orientation[pos] > 0 ? e.tail() : e.head();
      const int f_from = cyc.orientation[tgt] > 0 ? f.tail() : f.head();
      const int s = (f.is_loop() || vertex_images[static_cast<std::size_t>(from)] == f_from) ? 1 : -1;
      image[tgt] += s * x;
    }
    for (std::size_t pos = 0; pos < g.edge_count(); ++pos)
      if (chord_slot[pos] >= 0 && image[pos]) {
        const auto slot = static_cast<std::size_t>(chord_slot[pos]);
        // cycles carry +-1 on their own chord depending on the orientation
        P[slot][c] = Rational(image[pos]) / Rational(cyc.cycles[slot][pos]);
      }
  }
  // inverse transpose for the dual basis of H^1
  std::vector<std::vector<Rational>> A = P, inv(b, std::vector<Rational>(b, 0));
  for (std::size_t i = 0; i < b; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < b; ++col) {
    std::size_t piv = col;
    while (piv < b && A[piv][col] == 0) ++piv;
    if (piv == b) throw Error("graph automorphism is singular on H_1");
    std::swap(A[piv], A[col]);
    std::swap(inv[piv], inv[col]);
    const Rational d = A[col][col];
    for (std::size_t k = 0; k < b; ++k) {
      A[col][k] /= d;
      inv[col][k] /= d;
    }
    for (std::size_t r = 0; r < b; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const Rational f = A[r][col];
      for (std::size_t k = 0; k < b; ++k) {
        A[r][k] -= f * A[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }

  const auto to_integer = [](const Rational& q) {
    if (boost::multiprecision::denominator(q) != 1) throw Error("non-integral automorphism");
    return Integer(boost::multiprecision::numerator(q));
  };
  OperatorColumns cols(static_cast<std::size_t>(model.dimension()));
  for (std::size_t c = 0; c < b; ++c) {
    SparseVector<Integer> gr2, w0;
    for (std::size_t r = 0; r < b; ++r) {
      if (P[r][c] != 0) gr2.emplace_back(model.gr2_offset() + static_cast<int>(r), to_integer(P[r][c]));
      // column c of inv^T is row c of inv
      if (inv[c][r] != 0) w0.emplace_back(model.w0_offset() + static_cast<int>(r), to_integer(inv[c][r]));
    }
    cols[static_cast<std::size_t>(model.gr2_offset()) + c] = std::move(gr2);
    cols[static_cast<std::size_t>(model.w0_offset()) + c] = std::move(w0);
  }
  std::vector<int> block_start;
  int offset = model.gr1_offset();
  for (int gi : model.component_genera()) {
    block_start.push_back(offset);
    offset += 2 * gi;
  }
  for (std::size_t v = 0; v < block_start.size(); ++v) {
    const auto w = static_cast<std::size_t>(vertex_images[v]);
    const int size = 2 * model.component_genera()[v];
    if (size != 2 * model.component_genera()[w]) throw Error("automorphism mixes genera");
    for (int t = 0; t < size; ++t)
      cols[static_cast<std::size_t>(block_start[v] + t)] = {{block_start[w] + t, Integer(1)}};
  }
  return cols;
}

/// Image of an exterior power vector under the group-like action of a
/// linear map: v1 ^ ... ^ vi -> g v1 ^ ... ^ g vi.
inline SparseVector<Integer> apply_exterior_power(const OperatorColumns& op,
                                                  const ExteriorBasis& basis,
                                                  const SparseVector<Integer>& x) {
  SparseVector<Integer> acc;
  for (const auto& [idx, coeff] : x) {
    // expand the product factor by factor; partial products keyed by mask
    std::vector<std::pair<std::uint64_t, Integer>> partial{{0, coeff}};
    std::uint64_t rest = basis.monomial(static_cast<std::size_t>(idx));
    while (rest) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      std::map<std::uint64_t, Integer> next;
      for (const auto& [m, c] : partial)
        for (const auto& [s, a] : op[static_cast<std::size_t>(j)]) {
          const std::uint64_t bit = std::uint64_t{1} << s;
          if (m & bit) continue;
          // appending v_s at the end: sign from factors above s
          const bool odd = std::popcount(m & ~((bit << 1) - 1)) % 2 == 1;
          Integer v = c * a;
          next[m | bit] += odd ? Integer(-v) : v;
        }
      partial.clear();
      for (auto& [m, c] : next)
        if (c != 0) partial.emplace_back(m, std::move(c));
    }
    for (auto& [m, c] : partial) acc.emplace_back(static_cast<int>(basis.index(m)), std::move(c));
  }
  canonicalize(acc);
  return acc;
}

struct EquivariantTrace {
  Rational lefschetz = 0;              // sum_k (-1)^k trace on the top-weight terms
  std::vector<Rational> term_traces;   // per degree
};

/// Traces of a graph automorphism on the top-weight terms of the CKS
/// complex. The automorphism maps Im N_I to Im N_{g(I)}; with the standard
/// signs the summand of I carries the orientation line of I, so a fixed
/// summand contributes the sign of g on the sorted I times the trace on
/// Im N_I.
inline EquivariantTrace top_weight_equivariant_trace(const CKSComplexInstance& cx,
                                                     const std::vector<int>& vertex_images,
                                                     const std::vector<int>& edge_images) {
  const auto op = model_automorphism(cx.model(), vertex_images, edge_images);
  const int top = cx.exterior_degree() + cx.model().delta();
  EquivariantTrace out;
  for (int k = 0; k <= cx.top_degree(); ++k) {
    Rational tr = 0;
    for (const auto& t : cx.terms(k)) {
      std::vector<int> image;
      for (int p : t.positions) image.push_back(edge_images[static_cast<std::size_t>(p)]);
      std::vector<int> sorted = image;
      const int sign = sort_sign(sorted);
      if (sorted != t.positions) continue;
      std::map<int, std::size_t> row_of_pivot;
      for (std::size_t r = 0; r < t.basis.size(); ++r) row_of_pivot[t.basis[r][0].first] = r;
      for (std::size_t r = 0; r < t.basis.size(); ++r) {
        if (t.twisted_weights[r] != top) continue;
        const auto moved = apply_exterior_power(op, cx.exterior(), t.basis[r]);
        // coordinates on the echelon rows: read at pivots, then confirm
        SparseVector<Rational> check;
        for (const auto& [c, x] : moved) check.emplace_back(c, Rational(x));
        for (const auto& [c, x] : moved) {
          auto it = row_of_pivot.find(c);
          if (it == row_of_pivot.end()) continue;
          const auto& row = t.basis[it->second];
          const Rational a = Rational(x) / Rational(row[0].second);
          if (it->second == r) tr += Rational(sign) * a;
          for (const auto& [cc, y] : row) check.emplace_back(cc, -a * Rational(y));
        }
        canonicalize(check);
        if (!check.empty()) throw Error("automorphism does not preserve the CKS term");
      }
    }
    out.term_traces.push_back(tr);
    out.lefschetz += (k % 2 == 0 ? 1 : -1) * tr;
  }
  return out;
}

}  // namespace hitchin
