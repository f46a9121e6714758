#pragma once

// Exact linear algebra over Q: fraction-free sparse elimination with
// minimal-fill pivoting, modular rank at random word-size primes, canonical
// row-echelon bases and kernels.

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hitchin/core.hpp"
#include "hitchin/multigraph.hpp"
#include "hitchin/sparse.hpp"

namespace hitchin {

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // Fermat; p prime
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

inline std::uint32_t residue_of(const Integer& x, std::uint32_t p) {
  Integer r = x % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

template <class T>
std::uint32_t residue(const T& x, std::uint32_t p) {
  if constexpr (std::is_same_v<T, Rational>) {
    const std::uint32_t den =
        residue_of(boost::multiprecision::denominator(x), p);
    if (den == 0) throw Error("prime divides a denominator");
    const std::uint32_t num =
        residue_of(boost::multiprecision::numerator(x), p);
    return static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(num) * mod_inverse(den, p) % p);
  } else if constexpr (std::is_same_v<T, Integer>) {
    return residue_of(x, p);
  } else {
    long long r = static_cast<long long>(x) % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
  }
}

/// Scales a row to a primitive integer vector.
template <class T>
SparseVector<Integer> integer_row(const SparseVector<T>& row) {
  SparseVector<Integer> out;
  out.reserve(row.size());
  if constexpr (std::is_same_v<T, Rational>) {
    Integer l = 1;
    for (const auto& [c, v] : row)
      l = boost::multiprecision::lcm(l,
                                     boost::multiprecision::denominator(v));
    for (const auto& [c, v] : row) {
      Integer num = boost::multiprecision::numerator(v) *
                    (l / boost::multiprecision::denominator(v));
      out.emplace_back(c, std::move(num));
    }
  } else {
    for (const auto& [c, v] : row) out.emplace_back(c, Integer(v));
  }
  return out;
}

inline void make_primitive(SparseVector<Integer>& v) {
  if (v.empty()) return;
  Integer g = 0;
  for (const auto& [c, x] : v) {
    g = boost::multiprecision::gcd(g, x);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, x] : v) x /= g;
}

inline SparseVector<std::uint32_t> sub_scaled_mod(
    const SparseVector<std::uint32_t>& x, std::uint32_t factor,
    const SparseVector<std::uint32_t>& y, std::uint32_t p) {
  // x - factor * y (mod p)
  SparseVector<std::uint32_t> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  const std::uint64_t neg = p - factor;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first,
                       static_cast<std::uint32_t>(neg * y[j].second % p));
      ++j;
    } else {
      const std::uint32_t v = static_cast<std::uint32_t>(
          (x[i].second + neg * y[j].second) % p);
      if (v) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

/// Groups rows into independent blocks: two rows share a block when they
/// share a column (transitively). Zero rows are dropped.
inline std::vector<std::vector<SparseVector<Integer>>> split_blocks(
    std::vector<SparseVector<Integer>> rows) {
  std::unordered_map<int, int> slot;
  for (const auto& r : rows)
    for (const auto& [c, v] : r) slot.emplace(c, static_cast<int>(slot.size()));
  DisjointSets ds(static_cast<int>(std::max<std::size_t>(slot.size(), 1)));
  for (const auto& r : rows)
    for (std::size_t i = 1; i < r.size(); ++i)
      ds.unite(slot[r[0].first], slot[r[i].first]);
  std::unordered_map<int, std::size_t> block_of_root;
  std::vector<std::vector<SparseVector<Integer>>> blocks;
  for (auto& r : rows) {
    if (r.empty()) continue;
    const int root = ds.find(slot[r[0].first]);
    auto [it, fresh] = block_of_root.emplace(root, blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(std::move(r));
  }
  return blocks;
}

/// Fraction-free elimination on integer rows; pivots are chosen from the
/// sparsest row at its sparsest column (minimal Markowitz fill).
inline std::size_t fraction_free_rank_block(
    std::vector<SparseVector<Integer>> rows) {
  std::unordered_map<int, std::vector<int>> col_rows;
  std::unordered_map<int, int> col_count;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) {
      col_rows[c].push_back(static_cast<int>(i));
      ++col_count[c];
    }
  std::vector<char> alive(rows.size(), 1);
  std::vector<std::size_t> stamp(rows.size(), 0);
  std::size_t epoch = 0;
  std::size_t rank = 0;
  auto find_entry = [](const SparseVector<Integer>& r, int c) {
    auto it = std::lower_bound(
        r.begin(), r.end(), c,
        [](const auto& e, int col) { return e.first < col; });
    return (it != r.end() && it->first == c) ? it : r.end();
  };

  while (true) {
    int best = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!alive[i]) continue;
      if (rows[i].empty()) {
        alive[i] = 0;
        continue;
      }
      if (best < 0 || rows[i].size() < rows[static_cast<std::size_t>(best)].size())
        best = static_cast<int>(i);
    }
    if (best < 0) break;
    const SparseVector<Integer> pivot_row = rows[static_cast<std::size_t>(best)];
    int pivot_col = pivot_row[0].first;
    for (const auto& [c, v] : pivot_row)
      if (col_count[c] < col_count[pivot_col]) pivot_col = c;
    const Integer a = find_entry(pivot_row, pivot_col)->second;

    alive[static_cast<std::size_t>(best)] = 0;
    for (const auto& [c, v] : pivot_row) --col_count[c];
    ++rank;

    ++epoch;
    const std::vector<int> candidates = col_rows[pivot_col];
    for (int j : candidates) {
      const auto uj = static_cast<std::size_t>(j);
      if (!alive[uj] || stamp[uj] == epoch) continue;
      stamp[uj] = epoch;
      auto it = find_entry(rows[uj], pivot_col);
      if (it == rows[uj].end()) continue;
      const Integer b = it->second;
      SparseVector<Integer> updated =
          axpy_merge(rows[uj], a, pivot_row, Integer(-b));
      make_primitive(updated);
      // bookkeeping for columns gained and lost
      for (const auto& [c, v] : rows[uj]) --col_count[c];
      for (const auto& [c, v] : updated) {
        ++col_count[c];
        if (find_entry(rows[uj], c) == rows[uj].end())
          col_rows[c].push_back(j);
      }
      rows[uj] = std::move(updated);
      if (rows[uj].empty()) alive[uj] = 0;
    }
  }
  return rank;
}

}  // namespace detail

/// `count` distinct primes in (2^30, 2^31), drawn from a seeded generator.
inline std::vector<std::uint32_t> random_primes(std::uint64_t seed,
                                                std::size_t count) {
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  std::vector<std::uint32_t> primes;
  while (primes.size() < count) {
    const std::uint32_t candidate =
        (std::uint32_t{1} << 30) + 1 +
        static_cast<std::uint32_t>(rng() % ((std::uint32_t{1} << 30) - 1));
    if (detail::is_prime_u32(candidate) &&
        std::find(primes.begin(), primes.end(), candidate) == primes.end())
      primes.push_back(candidate);
  }
  return primes;
}

/// Rank over F_p by left-to-right column reduction. Columns flagged in
/// `skip` are not reduced (the caller knows they reduce to zero). When
/// `pivot_rows` is given it receives the pivot row of every pivot column.
template <class T>
std::size_t modular_rank(const SparseMatrix<T>& m, std::uint32_t p,
                         const std::vector<char>* skip = nullptr,
                         std::vector<std::pair<int, int>>* pivot_rows = nullptr) {
  std::vector<int> owner(m.rows(), -1);
  std::vector<SparseVector<std::uint32_t>> stored(m.cols());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (skip && (*skip)[c]) continue;
    SparseVector<std::uint32_t> v;
    v.reserve(m.column(c).size());
    for (const auto& [r, x] : m.column(c)) {
      const std::uint32_t rx = detail::residue(x, p);
      if (rx) v.emplace_back(r, rx);
    }
    while (!v.empty()) {
      const int low = v.back().first;
      const int k = owner[static_cast<std::size_t>(low)];
      if (k < 0) {
        const std::uint32_t inv = detail::mod_inverse(v.back().second, p);
        for (auto& [r, x] : v)
          x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * inv % p);
        owner[static_cast<std::size_t>(low)] = static_cast<int>(c);
        if (pivot_rows) pivot_rows->emplace_back(static_cast<int>(c), low);
        stored[c] = std::move(v);
        ++rank;
        break;
      }
      v = detail::sub_scaled_mod(v, v.back().second,
                                 stored[static_cast<std::size_t>(k)], p);
    }
  }
  return rank;
}

/// Exact rank over Q by fraction-free elimination, block by block.
template <class T>
std::size_t fraction_free_rank(const SparseMatrix<T>& m) {
  // eliminate along the shorter dimension
  const bool by_columns = m.cols() < m.rows();
  std::vector<SparseVector<T>> lines;
  if (by_columns) {
    for (std::size_t c = 0; c < m.cols(); ++c) lines.push_back(m.column(c));
  } else {
    lines = m.row_vectors();
  }
  std::vector<SparseVector<Integer>> rows;
  rows.reserve(lines.size());
  for (const auto& l : lines) {
    auto r = detail::integer_row(l);
    detail::make_primitive(r);
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (auto& block : detail::split_blocks(std::move(rows)))
    rank += detail::fraction_free_rank_block(std::move(block));
  return rank;
}

struct RankOptions {
  std::uint64_t seed = 2024;
  unsigned threads = 1;
};

struct RankReport {
  std::size_t rank = 0;
  std::vector<std::uint32_t> primes;
  std::vector<std::size_t> modular_ranks;
  bool modular_agree = true;
};

/// Exact rank plus an independent modular check at two random primes.
/// Modular ranks can only undershoot the rational rank; an overshoot means
/// the elimination is broken and is reported as an error.
template <class T>
RankReport exact_rank(const SparseMatrix<T>& m, const RankOptions& opt = {}) {
  RankReport report;
  report.primes = random_primes(opt.seed, 2);
  report.modular_ranks.resize(2);
  if (opt.threads > 1) {
    auto f0 = std::async(std::launch::async,
                         [&] { return modular_rank(m, report.primes[0]); });
    auto f1 = std::async(std::launch::async,
                         [&] { return modular_rank(m, report.primes[1]); });
    report.rank = fraction_free_rank(m);
    report.modular_ranks[0] = f0.get();
    report.modular_ranks[1] = f1.get();
  } else {
    report.rank = fraction_free_rank(m);
    report.modular_ranks[0] = modular_rank(m, report.primes[0]);
    report.modular_ranks[1] = modular_rank(m, report.primes[1]);
  }
  report.modular_agree = report.modular_ranks[0] == report.rank &&
                         report.modular_ranks[1] == report.rank;
  for (auto r : report.modular_ranks)
    if (r > report.rank) throw Error("modular rank exceeds rational rank");
  return report;
}

/// Reduced row-echelon basis of a subspace of Q^N, stored as primitive
/// integer rows with positive pivot entries. Every row vanishes on the
/// pivot columns of the other rows, so the basis is canonical.
class EchelonBasis {
 public:
  /// Returns true when `v` was independent of the current rows.
  bool insert(SparseVector<Integer> v) {
    reduce(v);
    if (v.empty()) return false;
    if (v[0].second < 0)
      for (auto& [c, x] : v) x = -x;
    const int pivot = v[0].first;
    const Integer a = v[0].second;
    for (auto& [p, row] : rows_) {
      auto it = find(row, pivot);
      if (it == row.end()) continue;
      const Integer b = it->second;
      row = axpy_merge(row, a, v, Integer(-b));
      detail::make_primitive(row);
    }
    rows_.emplace(pivot, std::move(v));
    return true;
  }

  /// Eliminates every pivot column from `v` (result is primitive).
  void reduce(SparseVector<Integer>& v) const {
    // rows vanish on each other's pivots, so one pass over the pivot
    // columns initially present in v suffices
    std::vector<int> hits;
    for (const auto& [c, x] : v)
      if (rows_.count(c)) hits.push_back(c);
    for (int c : hits) {
      auto entry = find(v, c);
      if (entry == v.end()) continue;
      const Integer b = entry->second;
      const auto& row = rows_.at(c);
      v = axpy_merge(v, row[0].second, row, Integer(-b));
      detail::make_primitive(v);
    }
  }

  bool contains(SparseVector<Integer> v) const {
    reduce(v);
    return v.empty();
  }

  std::size_t dimension() const { return rows_.size(); }

  std::vector<SparseVector<Integer>> rows() const {
    std::vector<SparseVector<Integer>> out;
    out.reserve(rows_.size());
    for (const auto& [p, r] : rows_) out.push_back(r);
    return out;
  }

  std::vector<int> pivots() const {
    std::vector<int> out;
    for (const auto& [p, r] : rows_) out.push_back(p);
    return out;
  }

 private:
  static SparseVector<Integer>::const_iterator find(
      const SparseVector<Integer>& r, int c) {
    auto it = std::lower_bound(
        r.begin(), r.end(), c,
        [](const auto& e, int col) { return e.first < col; });
    return (it != r.end() && it->first == c) ? it : r.end();
  }
  static SparseVector<Integer>::iterator find(SparseVector<Integer>& r, int c) {
    auto it = std::lower_bound(
        r.begin(), r.end(), c,
        [](const auto& e, int col) { return e.first < col; });
    return (it != r.end() && it->first == c) ? it : r.end();
  }

  std::map<int, SparseVector<Integer>> rows_;
};

/// Canonical basis of span(vectors): blocks of vectors with disjoint
/// supports are reduced independently, then merged in pivot order.
inline std::vector<SparseVector<Integer>> row_echelon_basis(
    std::vector<SparseVector<Integer>> vectors) {
  std::vector<std::pair<int, SparseVector<Integer>>> merged;
  for (auto& block : detail::split_blocks(std::move(vectors))) {
    EchelonBasis basis;
    for (auto& v : block) basis.insert(std::move(v));
    for (auto& r : basis.rows()) merged.emplace_back(r[0].first, std::move(r));
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SparseVector<Integer>> out;
  out.reserve(merged.size());
  for (auto& [p, r] : merged) out.push_back(std::move(r));
  return out;
}

/// Kernel of a matrix: one primitive integer vector per free column of the
/// echelon form, leading entry positive, ordered by free column. Vector i is
/// nonzero at free_columns[i] and zero at every other free column.
struct KernelBasis {
  std::vector<SparseVector<Integer>> vectors;
  std::vector<int> free_columns;
};

template <class T>
KernelBasis kernel_basis(const SparseMatrix<T>& m) {
  std::vector<SparseVector<Integer>> rows;
  for (const auto& r : m.row_vectors()) {
    auto ir = detail::integer_row(r);
    detail::make_primitive(ir);
    if (!ir.empty()) rows.push_back(std::move(ir));
  }
  const auto echelon = row_echelon_basis(std::move(rows));
  std::vector<char> is_pivot(m.cols(), 0);
  // column -> (row index, entry) for non-pivot entries
  std::vector<std::vector<std::pair<std::size_t, Integer>>> by_col(m.cols());
  for (std::size_t i = 0; i < echelon.size(); ++i) {
    is_pivot[static_cast<std::size_t>(echelon[i][0].first)] = 1;
    for (std::size_t j = 1; j < echelon[i].size(); ++j)
      by_col[static_cast<std::size_t>(echelon[i][j].first)].emplace_back(
          i, echelon[i][j].second);
  }
  KernelBasis kernel;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Integer l = 1;
    for (const auto& [i, x] : by_col[f]) l = boost::multiprecision::lcm(l, echelon[i][0].second);
    SparseVector<Integer> v;
    v.emplace_back(static_cast<int>(f), l);
    for (const auto& [i, x] : by_col[f]) {
      Integer coeff = -(l / echelon[i][0].second) * x;
      v.emplace_back(echelon[i][0].first, std::move(coeff));
    }
    canonicalize(v);
    detail::make_primitive(v);
    if (v[0].second < 0)
      for (auto& [c, x] : v) x = -x;
    kernel.vectors.push_back(std::move(v));
    kernel.free_columns.push_back(static_cast<int>(f));
  }
  return kernel;
}

}  // namespace hitchin
