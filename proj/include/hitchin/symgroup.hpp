#pragma once

// Permutations, conjugacy classes of symmetric groups and Young subgroups,
// rational class functions, and characters of symmetric-group actions on
// the top homology of the complexes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hitchin/complexes.hpp"
#include "hitchin/core.hpp"
#include "hitchin/homology.hpp"
#include "hitchin/multigraph.hpp"
#include "hitchin/rank.hpp"

namespace hitchin {

/// Non-increasing positive parts.
using IntPartition = std::vector<int>;

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> hit(images_.size(), 0);
    for (int x : images_) {
      if (x < 0 || x >= size() || hit[static_cast<std::size_t>(x)])
        throw Error("not a permutation");
      hit[static_cast<std::size_t>(x)] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
  }

  /// Product of disjoint cycles, each listed as its orbit.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i)
        v[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    std::vector<int> v(b.images_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a(b(static_cast<int>(i)));
    return Permutation(std::move(v));
  }

  Permutation inverse() const {
    std::vector<int> v(images_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return Permutation(std::move(v));
  }

  Permutation power(int k) const {
    Permutation out = identity(size());
    for (int i = 0; i < k; ++i) out = *this * out;
    return out;
  }

  IntPartition cycle_type() const {
    std::vector<char> seen(images_.size(), 0);
    IntPartition type;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
        seen[j] = 1;
        ++len;
      }
      type.push_back(len);
    }
    std::sort(type.begin(), type.end(), std::greater<>());
    return type;
  }

  int sign() const {
    int s = 1;
    for (int len : cycle_type())
      if (len % 2 == 0) s = -s;
    return s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Partitions of n in lexicographic order of their part vectors, so the
/// identity class (1^n) comes first and the n-cycle last.
inline std::vector<IntPartition> integer_partitions(int n) {
  std::vector<IntPartition> out;
  IntPartition cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  std::sort(out.begin(), out.end());
  return out;
}

/// "3+1" style key; the empty partition is "0".
inline std::string partition_key(const IntPartition& p) {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(p[i]);
  }
  return s;
}

/// Cycles in decreasing length on consecutive points: (3,1) -> (0 1 2)(3).
inline Permutation class_representative(const IntPartition& type) {
  const int n = std::accumulate(type.begin(), type.end(), 0);
  std::vector<std::vector<int>> cycles;
  int next = 0;
  for (int len : type) {
    std::vector<int> c;
    for (int i = 0; i < len; ++i) c.push_back(next++);
    cycles.push_back(std::move(c));
  }
  return Permutation::from_cycles(n, cycles);
}

/// n! / prod_k (k^{m_k} m_k!).
inline Integer class_size(const IntPartition& type) {
  const int n = std::accumulate(type.begin(), type.end(), 0);
  std::map<int, int> mult;
  for (int p : type) ++mult[p];
  Integer denom = 1;
  for (auto [k, m] : mult) {
    for (int i = 0; i < m; ++i) denom *= k;
    denom *= factorial(static_cast<std::uint64_t>(m));
  }
  return factorial(static_cast<std::uint64_t>(n)) / denom;
}

/// Uniformly random permutation of the given cycle type.
template <class Rng>
Permutation random_of_type(const IntPartition& type, Rng& rng) {
  const int n = std::accumulate(type.begin(), type.end(), 0);
  std::vector<int> points(static_cast<std::size_t>(n));
  std::iota(points.begin(), points.end(), 0);
  for (std::size_t i = points.size(); i > 1; --i)
    std::swap(points[i - 1], points[static_cast<std::size_t>(rng() % i)]);
  std::vector<std::vector<int>> cycles;
  std::size_t next = 0;
  for (int len : type) {
    std::vector<int> c(points.begin() + static_cast<std::ptrdiff_t>(next),
                       points.begin() + static_cast<std::ptrdiff_t>(next + static_cast<std::size_t>(len)));
    next += static_cast<std::size_t>(len);
    cycles.push_back(std::move(c));
  }
  return Permutation::from_cycles(n, cycles);
}

/// Rational class function on S_{f_1} x ... x S_{f_t}; a class is a tuple
/// of cycle types. A single factor is the symmetric group itself.
struct ClassFunction {
  std::vector<int> factors;
  std::map<std::vector<IntPartition>, Rational> values;

  Rational value(const IntPartition& type) const { return value(std::vector<IntPartition>{type}); }
  Rational value(const std::vector<IntPartition>& cls) const {
    auto it = values.find(cls);
    if (it == values.end()) throw Error("unknown conjugacy class");
    return it->second;
  }

  Integer group_order() const {
    Integer o = 1;
    for (int f : factors) o *= factorial(static_cast<std::uint64_t>(f));
    return o;
  }

  /// Classes as "3+1" keys joined with "|" across factors.
  std::map<std::string, Rational> keyed() const {
    std::map<std::string, Rational> out;
    for (const auto& [cls, v] : values) out[class_tuple_key(cls)] = v;
    return out;
  }

  static std::string class_tuple_key(const std::vector<IntPartition>& cls) {
    std::string s;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i) s += '|';
      s += partition_key(cls[i]);
    }
    return s;
  }

  friend bool operator==(const ClassFunction&, const ClassFunction&) = default;
};

/// Every class of the product group, in lexicographic order.
inline std::vector<std::vector<IntPartition>> product_classes(const std::vector<int>& factors) {
  std::vector<std::vector<IntPartition>> out{{}};
  for (int f : factors) {
    std::vector<std::vector<IntPartition>> next;
    const auto parts = f == 0 ? std::vector<IntPartition>{{}} : integer_partitions(f);
    for (const auto& prefix : out)
      for (const auto& p : parts) {
        auto c = prefix;
        c.push_back(p);
        next.push_back(std::move(c));
      }
    out = std::move(next);
  }
  return out;
}

inline Integer product_class_size(const std::vector<IntPartition>& cls) {
  Integer s = 1;
  for (const auto& p : cls) s *= class_size(p);
  return s;
}

/// <a, b> = (1/|G|) sum_g a(g) b(g) for rational (hence real) characters.
inline Rational character_inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.factors != b.factors) throw Error("class functions on different groups");
  Rational sum = 0;
  for (const auto& [cls, v] : a.values) sum += Rational(product_class_size(cls)) * v * b.value(cls);
  return sum / Rational(a.group_order());
}

inline ClassFunction sign_character(int r) {
  ClassFunction chi{{r}, {}};
  for (const auto& p : integer_partitions(r)) {
    int s = 1;
    for (int len : p)
      if (len % 2 == 0) s = -s;
    chi.values[{p}] = s;
  }
  return chi;
}

inline ClassFunction twist_by_sign(const ClassFunction& chi) {
  if (chi.factors.size() != 1) throw Error("sign twist needs a single symmetric group");
  const ClassFunction sgn = sign_character(chi.factors[0]);
  ClassFunction out = chi;
  for (auto& [cls, v] : out.values) v *= sgn.value(cls);
  return out;
}

/// Restriction of a character of S_r to the Young subgroup
/// S_{a_1} x ... x S_{a_t} (the a_j sum to r).
inline ClassFunction restrict_to_young(const ClassFunction& chi, const std::vector<int>& alphas) {
  if (chi.factors.size() != 1) throw Error("restriction needs a single symmetric group");
  if (std::accumulate(alphas.begin(), alphas.end(), 0) != chi.factors[0])
    throw Error("multiplicity mismatch");
  ClassFunction out{alphas, {}};
  for (const auto& cls : product_classes(alphas)) {
    IntPartition merged;
    for (const auto& p : cls) merged.insert(merged.end(), p.begin(), p.end());
    std::sort(merged.begin(), merged.end(), std::greater<>());
    out.values[cls] = chi.value(merged);
  }
  return out;
}

/// Permutation of edge positions induced by a vertex permutation. Parallel
/// edges are matched by copy index: the c-th edge (by label) between {u, v}
/// goes to the c-th edge between {pi(u), pi(v)}.
inline std::vector<int> edge_action(const Permutation& pi, const Multigraph& g) {
  if (pi.size() != g.vertex_count()) throw Error("permutation size does not match the graph");
  std::map<std::pair<int, int>, std::vector<std::size_t>> by_pair;
  std::vector<std::size_t> order(g.edge_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return g.edge_at(a).label < g.edge_at(b).label; });
  std::vector<int> copy(g.edge_count());
  for (std::size_t pos : order) {
    const Edge& e = g.edge_at(pos);
    auto& list = by_pair[{e.tail(), e.head()}];
    copy[pos] = static_cast<int>(list.size());
    list.push_back(pos);
  }
  std::vector<int> out(g.edge_count());
  for (std::size_t pos = 0; pos < g.edge_count(); ++pos) {
    const Edge& e = g.edge_at(pos);
    const int a = pi(e.u), b = pi(e.v);
    const auto it = by_pair.find({std::min(a, b), std::max(a, b)});
    if (it == by_pair.end() || it->second.size() != by_pair[{e.tail(), e.head()}].size())
      throw Error("vertex permutation is not a graph automorphism");
    out[pos] = static_cast<int>(it->second[static_cast<std::size_t>(copy[pos])]);
  }
  return out;
}

/// Determinant of the action of a graph automorphism on H_1(Gamma; Q),
/// with oriented edges: an edge whose image points against the canonical
/// orientation of its target picks up a sign.
inline int orientation_character(const Permutation& pi, const Multigraph& g) {
  const auto action = edge_action(pi, g);
  const CycleSpaceBasis basis = cycle_space(g);
  const std::size_t b = basis.rank();
  if (b == 0) return 1;
  std::vector<int> chord_slot(g.edge_count(), -1);
  for (std::size_t c = 0; c < b; ++c)
    chord_slot[g.position_of(basis.chord_labels[c])] = static_cast<int>(c);
  // a cycle's coordinates are its chord entries
  std::vector<std::vector<Rational>> m(b, std::vector<Rational>(b, 0));
  for (std::size_t c = 0; c < b; ++c) {
    std::vector<int> image(g.edge_count(), 0);
    for (std::size_t pos = 0; pos < g.edge_count(); ++pos) {
      const int x = basis.cycles[c][pos];
      if (!x) continue;
      const Edge& e = g.edge_at(pos);
      const auto tgt = static_cast<std::size_t>(action[pos]);
      const Edge& f = g.edge_at(tgt);
      const int s = (f.is_loop() || pi(e.tail()) == f.tail()) ? 1 : -1;
      image[tgt] += s * x;
    }
    for (std::size_t pos = 0; pos < g.edge_count(); ++pos)
      if (chord_slot[pos] >= 0 && image[pos])
        m[static_cast<std::size_t>(chord_slot[pos])][c] = image[pos];
  }
  // Gaussian elimination over Q
  Rational det = 1;
  for (std::size_t col = 0; col < b; ++col) {
    std::size_t piv = col;
    while (piv < b && m[piv][col] == 0) ++piv;
    if (piv == b) throw Error("graph automorphism is singular on H_1");
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < b; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < b; ++k) m[r][k] -= f * m[col][k];
    }
  }
  if (det != 1 && det != -1) throw Error("orientation character is not a sign");
  return det == 1 ? 1 : -1;
}

/// Which action on top homology to report: the plain simplicial action, or
/// the one twisted by the determinant of the action on H_1 of the graph.
enum class ActionTwist { Simplicial, Orientation };

struct CharacterOptions {
  int max_r = 6;
  ActionTwist twist = ActionTwist::Simplicial;
  HomologyOptions homology{};
};

/// Trace on top reduced homology of the cographic complex of `g` of the
/// automorphism induced by the vertex permutation `pi`.
inline Rational top_homology_trace(const FaceComplex& c, const TopCycleBasis& basis,
                                   const Multigraph& g, const Permutation& pi,
                                   ActionTwist twist = ActionTwist::Simplicial) {
  Rational t = trace(induced_map_on_top_homology(c, basis, edge_action(pi, g)));
  if (twist == ActionTwist::Orientation) t *= orientation_character(pi, g);
  return t;
}

/// Character of S_r on the top reduced homology of the cographic complex of
/// K_r. For r = 2 the complex is {empty face} but the top homology is taken
/// in dimension delta - 1 = -1 only when delta >= 1; since delta(K_2) = 0 the
/// character is identically zero there.
inline ClassFunction top_homology_character(int r, const CharacterOptions& opt = {}) {
  if (r < 2) throw Error("r must be at least 2");
  if (r > opt.max_r) throw Error("r too large for character computation");
  ClassFunction chi{{r}, {}};
  const Multigraph g = Multigraph::complete(r);
  if (delta_aff(g) == 0) {
    for (const auto& p : integer_partitions(r)) chi.values[{p}] = 0;
    return chi;
  }
  const FaceComplex c = cographic_complex(g);
  const auto cc = boundary_complex(c, opt.homology.threads);
  const auto basis = top_cycle_basis(c, cc);
  for (const auto& p : integer_partitions(r))
    chi.values[{p}] = top_homology_trace(c, basis, g, class_representative(p), opt.twist);
  return chi;
}

/// Character of S_r on the top reduced homology of the order complex of the
/// proper part of the partition lattice. The empty complex for r = 2 has
/// top homology in dimension -1 with the trivial action.
inline ClassFunction partition_lattice_character(int r, const CharacterOptions& opt = {}) {
  if (r < 2) throw Error("r must be at least 2");
  if (r > opt.max_r) throw Error("r too large for character computation");
  const FaceComplex c = partition_order_complex(r);
  const auto elems = proper_partitions(r);
  std::map<std::vector<int>, int> slot;
  for (std::size_t i = 0; i < elems.size(); ++i) slot[elems[i].block_of()] = static_cast<int>(i);
  const auto cc = boundary_complex(c, opt.homology.threads);
  const auto basis = top_cycle_basis(c, cc);
  ClassFunction chi{{r}, {}};
  for (const auto& p : integer_partitions(r)) {
    const Permutation pi = class_representative(p);
    std::vector<int> cell_perm(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
      cell_perm[i] = slot.at(elems[i].permuted(pi.images()).block_of());
    chi.values[{p}] = trace(induced_map_on_top_homology(c, basis, cell_perm));
  }
  return chi;
}

/// Mobius function.
inline int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

/// Ind_{C_r}^{S_r} of a faithful character omega of the cyclic group
/// generated by the r-cycle sigma = (0 1 ... r-1), by brute force over S_r:
/// chi(g) = (1/r) sum_{x in S_r} omega(x g x^{-1}) over conjugates landing
/// in <sigma>. The sum of the primitive d-th roots of unity is mu(d), which
/// gives the exact rational value; a floating-point evaluation checks it.
inline ClassFunction induced_character_oracle(int r, int max_r = 7) {
  if (r < 1) throw Error("r must be positive");
  if (r > max_r) throw Error("r too large for brute force");
  std::vector<int> ident(static_cast<std::size_t>(r));
  std::iota(ident.begin(), ident.end(), 0);
  std::vector<int> cyc(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % r;
  const Permutation sigma(cyc);
  std::map<std::vector<int>, int> power_of;
  for (int k = 0; k < r; ++k) power_of[sigma.power(k).images()] = k;

  ClassFunction chi{{r}, {}};
  for (const auto& type : integer_partitions(r)) {
    const Permutation g = class_representative(type);
    std::vector<long long> hits(static_cast<std::size_t>(r), 0);
    std::vector<int> x = ident;
    do {
      const Permutation px(x);
      const auto conj = (px * g * px.inverse()).images();
      if (auto it = power_of.find(conj); it != power_of.end()) ++hits[static_cast<std::size_t>(it->second)];
    } while (std::next_permutation(x.begin(), x.end()));

    std::complex<double> approx = 0;
    const double pi = std::acos(-1.0);
    for (int k = 0; k < r; ++k)
      approx += static_cast<double>(hits[static_cast<std::size_t>(k)]) *
                std::polar(1.0, 2.0 * pi * k / r);
    approx /= static_cast<double>(r);

    // hits[k] depends only on gcd(k, r); group by the order r / gcd
    Rational exact = 0;
    std::map<int, long long> by_gcd;
    for (int k = 0; k < r; ++k) {
      const int d = std::gcd(k, r);
      auto [it, inserted] = by_gcd.emplace(d, hits[static_cast<std::size_t>(k)]);
      if (!inserted && it->second != hits[static_cast<std::size_t>(k)])
        throw Error("conjugate counts are not constant on generator classes");
    }
    for (auto [d, count] : by_gcd) exact += Rational(count) * mobius(r / d);
    exact /= r;
    if (std::abs(approx.real() - exact.convert_to<double>()) > 1e-9 || std::abs(approx.imag()) > 1e-9)
      throw Error("induced character evaluation mismatch");
    chi.values[{type}] = exact;
  }
  return chi;
}

}  // namespace hitchin
