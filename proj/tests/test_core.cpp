#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <atomic>
#include <random>
#include <set>

#include "hitchin/core.hpp"
#include "hitchin/sparse.hpp"
#include "hitchin/rank.hpp"

using namespace hitchin;

TEST_CASE("binomial matches Pascal's triangle") {
  std::vector<std::vector<std::uint64_t>> pascal(40);
  for (std::size_t n = 0; n < pascal.size(); ++n) {
    pascal[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  for (std::size_t n = 0; n < pascal.size(); ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      REQUIRE(binomial(n, k) == pascal[n][k]);
      REQUIRE(binomial_big(n, k) == Integer(pascal[n][k]));
    }
  REQUIRE(binomial(5, 7) == 0);
}

TEST_CASE("factorial") {
  Integer f = 1;
  for (std::uint64_t n = 0; n <= 25; ++n) {
    if (n > 0) f *= n;
    REQUIRE(factorial(n) == f);
  }
}

TEST_CASE("CellSet agrees with std::set") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    CellSet s;
    std::set<int> ref;
    for (int i = 0; i < 40; ++i) {
      const int c = static_cast<int>(rng() % 256);
      if (rng() % 3) {
        s.insert(c);
        ref.insert(c);
      } else {
        s.erase(c);
        ref.erase(c);
      }
    }
    REQUIRE(s.size() == static_cast<int>(ref.size()));
    REQUIRE(s.to_vector() == std::vector<int>(ref.begin(), ref.end()));
    if (!ref.empty()) REQUIRE(s.max() == *ref.rbegin());
    for (int c = 0; c < 256; ++c) REQUIRE(s.contains(c) == (ref.count(c) == 1));
  }
}

TEST_CASE("sort_sign is the parity of the inversion count") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> v(8);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    int inversions = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) inversions += v[i] > v[j];
    std::vector<int> w = v;
    REQUIRE(sort_sign(w) == (inversions % 2 ? -1 : 1));
    REQUIRE(std::is_sorted(w.begin(), w.end()));
  }
}

TEST_CASE("parallel_for visits each index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) REQUIRE(h.load() == 1);
}

namespace {

// Dense rational elimination, used as an independent rank oracle.
std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && a[r][c] != 0) {
        const Rational f = a[r][c] / a[rank][c];
        for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
      }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("exact, fraction-free and modular ranks agree with dense elimination") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    SparseMatrix<Integer> m(rows, cols);
    std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols, 0));
    // low-rank products make rank deficiency common
    const std::size_t inner = 1 + rng() % 6;
    std::vector<std::vector<int>> a(rows, std::vector<int>(inner)), b(inner, std::vector<int>(cols));
    for (auto& row : a)
      for (auto& x : row) x = static_cast<int>(rng() % 5) - 2;
    for (auto& row : b)
      for (auto& x : row) x = static_cast<int>(rng() % 5) - 2;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        long long v = 0;
        for (std::size_t k = 0; k < inner; ++k) v += a[r][k] * b[k][c];
        m.set(r, c, Integer(v));
        dense[r][c] = v;
      }
    const std::size_t expect = dense_rank(dense);
    REQUIRE(fraction_free_rank(m) == expect);
    REQUIRE(exact_rank(m).rank == expect);
    REQUIRE(modular_rank(m, 1000003u) <= expect);
  }
}

TEST_CASE("kernel basis vectors are annihilated") {
  SparseMatrix<Integer> m(2, 4);
  m.set(0, 0, 1);
  m.set(0, 1, 1);
  m.set(1, 2, 2);
  m.set(1, 3, -2);
  const auto k = kernel_basis(m);
  REQUIRE(k.vectors.size() == 2);
  for (const auto& v : k.vectors) REQUIRE(multiply(m, v).empty());
}
