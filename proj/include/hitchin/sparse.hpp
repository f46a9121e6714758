#pragma once

// Column-major sparse matrices over an exact scalar ring.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "hitchin/core.hpp"

namespace hitchin {

/// Sorted (index, value) pairs with no stored zeros.
template <class T>
using SparseVector = std::vector<std::pair<int, T>>;

template <class T>
SparseVector<T> axpy_merge(const SparseVector<T>& x, const T& a,
                           const SparseVector<T>& y, const T& b) {
  // returns a*x + b*y
  SparseVector<T> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      T v = a * x[i].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      T v = b * y[j].second;
      if (v != 0) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      T v = a * x[i].second + b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Collapses duplicate indices (summing values) and drops zeros.
template <class T>
void canonicalize(SparseVector<T>& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    T sum = v[i].second;
    while (++j < v.size() && v[j].first == v[i].first) sum += v[j].second;
    if (sum != 0) v[out++] = {v[i].first, std::move(sum)};
    i = j;
  }
  v.resize(out);
}

template <class T>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const SparseVector<T>& column(std::size_t c) const { return columns_[c]; }

  /// Replaces column c; the vector is canonicalized.
  void set_column(std::size_t c, SparseVector<T> v) {
    canonicalize(v);
    columns_[c] = std::move(v);
  }

  void set(std::size_t r, std::size_t c, const T& value) {
    auto& col = columns_[c];
    auto it = std::lower_bound(
        col.begin(), col.end(), static_cast<int>(r),
        [](const auto& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == static_cast<int>(r)) {
      if (value == 0)
        col.erase(it);
      else
        it->second = value;
    } else if (value != 0) {
      col.insert(it, {static_cast<int>(r), value});
    }
  }

  T at(std::size_t r, std::size_t c) const {
    const auto& col = columns_[c];
    auto it = std::lower_bound(
        col.begin(), col.end(), static_cast<int>(r),
        [](const auto& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == static_cast<int>(r)) return it->second;
    return T(0);
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const { return nnz() == 0; }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : columns_[c])
        t.columns_[static_cast<std::size_t>(r)].emplace_back(
            static_cast<int>(c), v);
    return t;
  }

  /// Row-major view: rows()[r] lists (column, value).
  std::vector<SparseVector<T>> row_vectors() const {
    std::vector<SparseVector<T>> out(rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : columns_[c])
        out[static_cast<std::size_t>(r)].emplace_back(static_cast<int>(c), v);
    return out;
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m.columns_[i].emplace_back(static_cast<int>(i), T(1));
    return m;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector<T>> columns_;
};

using SparseRationalMatrix = SparseMatrix<Rational>;

template <class T>
SparseVector<T> multiply(const SparseMatrix<T>& a, const SparseVector<T>& x) {
  SparseVector<T> acc;
  for (const auto& [c, xv] : x)
    for (const auto& [r, v] : a.column(static_cast<std::size_t>(c)))
      acc.emplace_back(r, v * xv);
  canonicalize(acc);
  return acc;
}

template <class T>
SparseMatrix<T> multiply(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw Error("matrix dimension mismatch");
  SparseMatrix<T> out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c)
    out.set_column(c, multiply(a, b.column(c)));
  return out;
}

template <class To, class From>
SparseMatrix<To> convert(const SparseMatrix<From>& m) {
  SparseMatrix<To> out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    SparseVector<To> col;
    col.reserve(m.column(c).size());
    for (const auto& [r, v] : m.column(c)) col.emplace_back(r, To(v));
    out.set_column(c, std::move(col));
  }
  return out;
}

}  // namespace hitchin
