#pragma once

// Exterior powers of a vector space of dimension <= 64. A monomial
// v_{j1} ^ ... ^ v_{ji} with j1 < ... < ji is a bit mask; monomials of a
// fixed degree are indexed in increasing mask order (colexicographic order
// of the sorted index tuple).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hitchin/core.hpp"
#include "hitchin/sparse.hpp"

namespace hitchin {

class ExteriorBasis {
 public:
  static constexpr std::size_t kDefaultBound = 2'000'000;

  ExteriorBasis(int dimension, int degree, std::size_t bound = kDefaultBound)
      : dimension_(dimension), degree_(degree) {
    if (dimension < 0 || degree < 0) throw Error("negative exterior dimension");
    if (dimension > 64) throw Error("exterior degree too large");
    if (degree > dimension) return;
    const std::uint64_t count = binomial(static_cast<std::uint64_t>(dimension),
                                         static_cast<std::uint64_t>(degree));
    if (count > bound) throw Error("exterior degree too large");
    monomials_.reserve(count);
    if (degree == 0) {
      monomials_.push_back(0);
      return;
    }
    std::uint64_t m = degree == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << degree) - 1;
    for (std::uint64_t i = 0; i < count; ++i) {
      monomials_.push_back(m);
      if (i + 1 == count) break;
      // next mask with the same popcount
      const std::uint64_t low = m & (~m + 1);
      const std::uint64_t ripple = m + low;
      m = ripple | (((m ^ ripple) >> 2) / low);
    }
  }

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  std::uint64_t monomial(std::size_t index) const { return monomials_[index]; }
  const std::vector<std::uint64_t>& monomials() const { return monomials_; }

  /// Position of a degree-`degree()` mask: sum over its bits p_1 < p_2 < ...
  /// of C(p_t, t).
  std::size_t index(std::uint64_t mask) const {
    std::size_t r = 0;
    std::uint64_t t = 1;
    while (mask) {
      const int p = std::countr_zero(mask);
      r += static_cast<std::size_t>(binomial(static_cast<std::uint64_t>(p), t));
      ++t;
      mask &= mask - 1;
    }
    return r;
  }

 private:
  int dimension_;
  int degree_;
  std::vector<std::uint64_t> monomials_;
};

/// Sign of replacing factor j by factor s in monomial m (s not in m): the
/// number of factors strictly between them.
inline int replacement_sign(std::uint64_t m, int j, int s) {
  const int lo = j < s ? j : s;
  const int hi = j < s ? s : j;
  if (hi - lo <= 1) return 1;
  const std::uint64_t between = ((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{2} << lo) - 1);
  return (std::popcount(m & between) % 2 == 0) ? 1 : -1;
}

/// Linear operator on V given by its columns; acts on the exterior algebra
/// as the derivation A(v1 ^ ... ^ vi) = sum_t v1 ^ ... ^ A vt ^ ... ^ vi.
using OperatorColumns = std::vector<SparseVector<Integer>>;

inline SparseVector<Integer> apply_derivation(const OperatorColumns& op,
                                              const ExteriorBasis& basis,
                                              const SparseVector<Integer>& x) {
  SparseVector<Integer> acc;
  for (const auto& [idx, coeff] : x) {
    const std::uint64_t m = basis.monomial(static_cast<std::size_t>(idx));
    std::uint64_t rest = m;
    while (rest) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      for (const auto& [s, a] : op[static_cast<std::size_t>(j)]) {
        if (s == j) {
          acc.emplace_back(idx, a * coeff);
          continue;
        }
        const std::uint64_t bit = std::uint64_t{1} << s;
        if (m & bit) continue;
        const std::uint64_t image = (m & ~(std::uint64_t{1} << j)) | bit;
        Integer v = a * coeff;
        if (replacement_sign(m, j, s) < 0) v = -v;
        acc.emplace_back(static_cast<int>(basis.index(image)), std::move(v));
      }
    }
  }
  canonicalize(acc);
  return acc;
}

}  // namespace hitchin
