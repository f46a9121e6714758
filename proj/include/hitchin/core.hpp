#pragma once

// Shared scalar types, error type, small combinatorial helpers and a
// deterministic worker pool used across the library.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace hitchin {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // exact at every step: result * (n - k + i) is divisible by i
    result = result * (n - k + i) / i;
  }
  return result;
}

inline Integer binomial_big(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

inline Integer factorial(std::uint64_t n) {
  Integer result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

/// Number of worker threads; HITCHIN_THREADS overrides the hardware default.
inline unsigned default_parallelism() {
  if (const char* env = std::getenv("HITCHIN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, count). Work is split into contiguous chunks so
/// results written by index stay deterministic regardless of thread count.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::future<void>> pending;
  pending.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pending.push_back(std::async(std::launch::async, [lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    }));
  }
  for (auto& f : pending) f.get();
}

/// Fixed-capacity set of small non-negative integers (cells of a complex).
class CellSet {
 public:
  static constexpr int kCapacity = 256;

  CellSet() = default;

  static CellSet from_indices(const std::vector<int>& cells) {
    CellSet s;
    for (int c : cells) s.insert(c);
    return s;
  }

  void insert(int c) { words_[c >> 6] |= (std::uint64_t{1} << (c & 63)); }
  void erase(int c) { words_[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }
  bool contains(int c) const {
    return (words_[c >> 6] >> (c & 63)) & 1U;
  }

  int size() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Largest element, or -1 when empty.
  int max() const {
    for (int i = kWords - 1; i >= 0; --i)
      if (words_[i]) return i * 64 + 63 - std::countl_zero(words_[i]);
    return -1;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int i = 0; i < kWords; ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        out.push_back(i * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (int i = 0; i < kWords; ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        fn(i * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  CellSet operator|(const CellSet& o) const {
    CellSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
  }
  CellSet operator&(const CellSet& o) const {
    CellSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  bool subset_of(const CellSet& o) const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  friend bool operator==(const CellSet&, const CellSet&) = default;

  /// Lexicographic order of the sorted element lists (equal sizes assumed):
  /// the set owning the smallest differing element comes first.
  static bool lex_less(const CellSet& a, const CellSet& b) {
    for (int i = 0; i < kWords; ++i) {
      const std::uint64_t x = a.words_[i] ^ b.words_[i];
      if (x) return (a.words_[i] & (x & (~x + 1))) != 0;
    }
    return false;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  static constexpr int kWords = kCapacity / 64;
  std::array<std::uint64_t, kWords> words_{};
};

struct CellSetHash {
  std::size_t operator()(const CellSet& s) const { return s.hash(); }
};

/// Sign of the permutation that sorts `v` (entries distinct).
inline int sort_sign(std::vector<int>& v) {
  int sign = 1;
  // insertion sort; inputs are short
  for (std::size_t i = 1; i < v.size(); ++i) {
    int x = v[i];
    std::size_t j = i;
    while (j > 0 && v[j - 1] > x) {
      v[j] = v[j - 1];
      --j;
      sign = -sign;
    }
    v[j] = x;
  }
  return sign;
}

}  // namespace hitchin
