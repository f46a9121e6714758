#pragma once

// Reduced simplicial homology over Q. All Betti numbers are *reduced*:
// the empty face sits in dimension -1 and the augmentation is the boundary
// of the vertices, so the complex {empty face} has b_{-1} = 1.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hitchin/complexes.hpp"
#include "hitchin/core.hpp"
#include "hitchin/rank.hpp"
#include "hitchin/sparse.hpp"

namespace hitchin {

/// Boundary maps of a face complex. boundary(d) maps d-dimensional faces
/// (d+1 cells) to (d-1)-dimensional faces; boundary(0) is the augmentation.
class RationalChainComplex {
 public:
  RationalChainComplex() = default;
  RationalChainComplex(std::vector<std::size_t> chain_dims,
                       std::vector<SparseMatrix<int>> boundaries)
      : chain_dims_(std::move(chain_dims)), boundaries_(std::move(boundaries)) {}

  /// Highest dimension with a chain group (-1 for {empty face}).
  int top_dimension() const { return static_cast<int>(chain_dims_.size()) - 2; }

  std::size_t chain_dim(int d) const {
    const int k = d + 1;
    if (k < 0 || k >= static_cast<int>(chain_dims_.size())) return 0;
    return chain_dims_[static_cast<std::size_t>(k)];
  }

  /// Valid for 0 <= d <= top_dimension().
  const SparseMatrix<int>& boundary(int d) const {
    return boundaries_.at(static_cast<std::size_t>(d));
  }

  /// Checks boundary(d-1) * boundary(d) == 0 on every column, or on an
  /// evenly spaced sample of `sample` columns per dimension.
  bool verify_square_zero(std::size_t sample = 0) const {
    for (int d = 1; d <= top_dimension(); ++d) {
      const auto& outer = boundary(d - 1);
      const auto& inner = boundary(d);
      const std::size_t cols = inner.cols();
      const std::size_t stride =
          (sample == 0 || cols <= sample) ? 1 : cols / sample;
      for (std::size_t c = 0; c < cols; c += stride)
        if (!multiply(outer, inner.column(c)).empty()) return false;
    }
    return true;
  }

 private:
  std::vector<std::size_t> chain_dims_;
  std::vector<SparseMatrix<int>> boundaries_;
};

/// Alternating-sign boundary over the lexicographic face order; the sign of
/// dropping the j-th smallest cell is (-1)^j.
inline RationalChainComplex boundary_complex(const FaceComplex& c,
                                             unsigned threads = 1) {
  std::vector<std::size_t> dims = c.f_vector();
  std::vector<SparseMatrix<int>> boundaries;
  for (int k = 1; k <= c.max_cardinality(); ++k) {
    const auto& faces = c.faces(k);
    SparseMatrix<int> m(c.faces(k - 1).size(), faces.size());
    std::vector<SparseVector<int>> cols(faces.size());
    parallel_for(faces.size(), threads, [&](std::size_t j) {
      int sign = 1;
      faces[j].for_each([&](int cell) {
        CellSet facet = faces[j];
        facet.erase(cell);
        const auto idx = c.index_of(facet);
        if (!idx) throw Error("face complex is not downward closed");
        cols[j].emplace_back(static_cast<int>(*idx), sign);
        sign = -sign;
      });
    });
    for (std::size_t j = 0; j < faces.size(); ++j) m.set_column(j, std::move(cols[j]));
    boundaries.push_back(std::move(m));
  }
  return RationalChainComplex(std::move(dims), std::move(boundaries));
}

struct HomologyOptions {
  /// Matrices larger than this in both dimensions go through the modular
  /// path first.
  std::size_t exact_limit = 500;
  bool force_exact = false;
  std::uint64_t seed = 2024;
  unsigned threads = 1;
};

struct HomologyProfile {
  /// betti[d + 1] is the reduced Betti number in dimension d >= -1.
  std::vector<long long> betti;
  long long euler = 0;  // reduced Euler characteristic from the f-vector
  /// "exact" when every rank came from rational elimination, "modular+euler"
  /// when modular ranks were certified by the Euler characteristic.
  std::string certificate = "exact";
  std::vector<std::uint32_t> primes;

  long long at(int d) const {
    const int i = d + 1;
    if (i < 0 || i >= static_cast<int>(betti.size())) return 0;
    return betti[static_cast<std::size_t>(i)];
  }

  int top_dimension() const { return static_cast<int>(betti.size()) - 2; }

  std::vector<int> nonzero_dimensions() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < betti.size(); ++i)
      if (betti[i] != 0) out.push_back(static_cast<int>(i) - 1);
    return out;
  }

  long long betti_euler() const {
    long long s = 0;
    for (std::size_t i = 0; i < betti.size(); ++i)
      s += ((i % 2 == 1) ? 1 : -1) * betti[i];
    return s;
  }
};

namespace detail {

inline std::vector<long long> betti_from_ranks(const RationalChainComplex& cc,
                                               const std::vector<std::size_t>& ranks) {
  // ranks[d] = rank of boundary(d)
  std::vector<long long> betti;
  for (int d = -1; d <= cc.top_dimension(); ++d) {
    const long long dim = static_cast<long long>(cc.chain_dim(d));
    const long long out =
        d >= 0 ? static_cast<long long>(ranks[static_cast<std::size_t>(d)]) : 0;
    const long long in = d + 1 <= cc.top_dimension()
                             ? static_cast<long long>(ranks[static_cast<std::size_t>(d + 1)])
                             : 0;
    betti.push_back(dim - out - in);
  }
  return betti;
}

}  // namespace detail

/// b_d = dim C_d - rank boundary(d) - rank boundary(d+1).
///
/// Small matrices are ranked by exact elimination (with a modular check).
/// Large ones are ranked modulo two random primes with clearing; modular
/// ranks never exceed rational ranks, so the resulting Betti numbers bound
/// the rational ones from above degreewise while both share the Euler
/// characteristic. If the nonzero modular Betti numbers all sit in degrees
/// of one parity they are therefore exact; otherwise the large matrices are
/// re-ranked exactly.
inline HomologyProfile reduced_homology(const RationalChainComplex& cc,
                                        const HomologyOptions& opt = {}) {
  const int top = cc.top_dimension();
  HomologyProfile profile;
  for (int d = -1; d <= top; ++d)
    profile.euler += ((d + 1) % 2 == 0 ? -1 : 1) * static_cast<long long>(cc.chain_dim(d));
  profile.primes = random_primes(opt.seed, 2);

  const std::size_t n = top >= 0 ? static_cast<std::size_t>(top) + 1 : 0;
  std::vector<std::size_t> ranks(n, 0);
  std::vector<char> is_large(n, 0);
  for (std::size_t d = 0; d < n; ++d) {
    const auto& m = cc.boundary(static_cast<int>(d));
    is_large[d] = !opt.force_exact && m.rows() > opt.exact_limit &&
                  m.cols() > opt.exact_limit;
  }

  // modular ranks, top dimension first so pivots clear columns below
  std::vector<std::vector<std::size_t>> modular(2, std::vector<std::size_t>(n, 0));
  parallel_for(2, opt.threads, [&](std::size_t which) {
    const std::uint32_t p = profile.primes[which];
    std::vector<char> cleared;
    for (std::size_t i = n; i-- > 0;) {
      const auto& m = cc.boundary(static_cast<int>(i));
      std::vector<std::pair<int, int>> pivots;
      const bool use_clearing = cleared.size() == m.cols();
      modular[which][i] = modular_rank(m, p, use_clearing ? &cleared : nullptr, &pivots);
      cleared.assign(m.rows(), 0);
      for (auto [col, row] : pivots) cleared[static_cast<std::size_t>(row)] = 1;
    }
  });

  bool any_modular = false;
  parallel_for(n, opt.threads, [&](std::size_t d) {
    if (is_large[d] && modular[0][d] == modular[1][d]) return;
    ranks[d] = fraction_free_rank(cc.boundary(static_cast<int>(d)));
    if (modular[0][d] > ranks[d] || modular[1][d] > ranks[d])
      throw Error("modular rank exceeds rational rank");
  });
  for (std::size_t d = 0; d < n; ++d)
    if (is_large[d] && modular[0][d] == modular[1][d]) {
      ranks[d] = modular[0][d];
      any_modular = true;
    }

  profile.betti = detail::betti_from_ranks(cc, ranks);
  if (any_modular) {
    const auto nz = profile.nonzero_dimensions();
    const bool one_parity =
        std::all_of(nz.begin(), nz.end(), [&](int d) { return (d - nz[0]) % 2 == 0; });
    if (one_parity && profile.betti_euler() == profile.euler) {
      profile.certificate = "modular+euler";
    } else {
      for (std::size_t d = 0; d < n; ++d)
        if (is_large[d]) ranks[d] = fraction_free_rank(cc.boundary(static_cast<int>(d)));
      profile.betti = detail::betti_from_ranks(cc, ranks);
    }
  }
  if (profile.betti_euler() != profile.euler)
    throw Error("Euler characteristic mismatch");
  return profile;
}

inline HomologyProfile reduced_homology(const FaceComplex& c,
                                        const HomologyOptions& opt = {}) {
  return reduced_homology(boundary_complex(c, opt.threads), opt);
}

/// Canonical basis of the top-dimensional reduced homology (the kernel of
/// the top boundary), from the echelon form of that boundary.
struct TopCycleBasis {
  int dimension = -1;
  std::vector<SparseVector<Integer>> cycles;
  std::vector<int> pivot_faces;  // cycles[i] is nonzero here, others vanish

  std::size_t rank() const { return cycles.size(); }
};

inline TopCycleBasis top_cycle_basis(const FaceComplex& c,
                                     const RationalChainComplex& cc) {
  TopCycleBasis basis;
  basis.dimension = c.dimension();
  if (basis.dimension < 0) {
    basis.cycles.push_back({{0, Integer(1)}});
    basis.pivot_faces.push_back(0);
    return basis;
  }
  auto kernel = kernel_basis(cc.boundary(basis.dimension));
  basis.cycles = std::move(kernel.vectors);
  basis.pivot_faces = std::move(kernel.free_columns);
  return basis;
}

/// Image of a face under a ground-set permutation, with the orientation
/// sign of re-sorting its cells.
inline std::pair<CellSet, int> permute_face(const CellSet& face,
                                            const std::vector<int>& perm) {
  std::vector<int> image;
  face.for_each([&](int cell) { image.push_back(perm[static_cast<std::size_t>(cell)]); });
  const int sign = sort_sign(image);
  return {CellSet::from_indices(image), sign};
}

inline bool is_automorphism(const FaceComplex& c, const std::vector<int>& perm) {
  if (perm.size() != c.ground_size()) return false;
  std::vector<char> hit(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(perm.size()) || hit[static_cast<std::size_t>(p)])
      return false;
    hit[static_cast<std::size_t>(p)] = 1;
  }
  for (int k = 1; k <= c.max_cardinality(); ++k)
    for (const CellSet& f : c.faces(k))
      if (!c.contains(permute_face(f, perm).first)) return false;
  return true;
}

/// Matrix of a simplicial automorphism on the top cycle basis: column j
/// holds the coordinates of the image of cycle j.
inline SparseRationalMatrix induced_map_on_top_homology(
    const FaceComplex& c, const TopCycleBasis& basis, const std::vector<int>& perm) {
  if (!is_automorphism(c, perm)) throw Error("not a simplicial automorphism");
  const int k = basis.dimension + 1;
  const auto& faces = c.faces(k);
  std::vector<std::pair<std::size_t, int>> image_of(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    auto [img, sign] = permute_face(faces[i], perm);
    image_of[i] = {*c.index_of(img), sign};
  }
  const std::size_t b = basis.rank();
  std::vector<int> slot_of_pivot(faces.size(), -1);
  for (std::size_t i = 0; i < b; ++i)
    slot_of_pivot[static_cast<std::size_t>(basis.pivot_faces[i])] = static_cast<int>(i);

  SparseRationalMatrix out(b, b);
  for (std::size_t j = 0; j < b; ++j) {
    SparseVector<Integer> moved;
    for (const auto& [f, x] : basis.cycles[j]) {
      const auto [g, sign] = image_of[static_cast<std::size_t>(f)];
      moved.emplace_back(static_cast<int>(g), sign > 0 ? x : Integer(-x));
    }
    canonicalize(moved);
    SparseVector<Rational> coords;
    for (const auto& [f, x] : moved) {
      const int slot = slot_of_pivot[static_cast<std::size_t>(f)];
      if (slot < 0) continue;
      const auto& cyc = basis.cycles[static_cast<std::size_t>(slot)];
      const auto it = std::find_if(cyc.begin(), cyc.end(),
                                   [&](const auto& e) { return e.first == f; });
      coords.emplace_back(slot, Rational(x) / Rational(it->second));
    }
    canonicalize(coords);
    // the image must be exactly this combination of basis cycles
    SparseVector<Rational> check;
    for (const auto& [slot, a] : coords)
      for (const auto& [f, x] : basis.cycles[static_cast<std::size_t>(slot)])
        check.emplace_back(f, a * Rational(x));
    for (const auto& [f, x] : moved) check.emplace_back(f, Rational(-x));
    canonicalize(check);
    if (!check.empty()) throw Error("image of a top cycle is not in the cycle span");
    out.set_column(j, std::move(coords));
  }
  return out;
}

inline SparseRationalMatrix induced_map_on_top_homology(const FaceComplex& c,
                                                        const std::vector<int>& perm) {
  const auto cc = boundary_complex(c);
  return induced_map_on_top_homology(c, top_cycle_basis(c, cc), perm);
}

inline Rational trace(const SparseRationalMatrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m.at(i, i);
  return t;
}

}  // namespace hitchin
