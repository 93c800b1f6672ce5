#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mahler/error.hpp"

namespace mahler {

/// Sum of x * y over the pairs; field types with expensive normalization
/// (RatFun) provide a non-template overload found by ADL.
template <class T>
T sum_of_products(const std::vector<std::pair<const T*, const T*>>& terms) {
  T acc(0);
  for (const auto& [x, y] : terms) acc += *x * *y;
  return acc;
}

/// Row-major dense matrix over an exact field T (GaussianRational, RatFun).
/// T must be constructible from long and provide is_zero().
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw MahlerError(ErrorKind::DimensionMismatch, "entry count does not match shape");
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<T>& data() const { return data_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  DenseMatrix transpose() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  template <class F>
  auto map(F&& f) const -> DenseMatrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return DenseMatrix<U>(rows_, cols_, std::move(out));
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const T& s) { return a *= s; }
  friend DenseMatrix operator*(const T& s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator-(DenseMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw MahlerError(ErrorKind::DimensionMismatch, "matrix product shapes");
    DenseMatrix out(a.rows_, b.cols_);
    std::vector<std::pair<const T*, const T*>> terms;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        terms.clear();
        for (std::size_t k = 0; k < a.cols_; ++k) {
          if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
          terms.emplace_back(&a(i, k), &b(k, j));
        }
        if (!terms.empty()) out(i, j) = sum_of_products(terms);
      }
    }
    return out;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) { return !(a == b); }

 private:
  void check_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw MahlerError(ErrorKind::DimensionMismatch, "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
DenseMatrix<T> kronecker(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  DenseMatrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

template <class T>
T determinant(DenseMatrix<T> m) {
  if (!m.is_square()) throw MahlerError(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return T(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    T inv = T(1) / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      T factor = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(r, j) -= factor * m(c, j);
    }
  }
  return det;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(DenseMatrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(piv, j));
    T inv = T(1) / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c).is_zero()) continue;
      T factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= factor * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(DenseMatrix<T> m) {
  return row_reduce(m).size();
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column,
/// with the free coordinate set to 1.
template <class T>
std::vector<std::vector<T>> nullspace(DenseMatrix<T> m) {
  std::vector<std::size_t> pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
DenseMatrix<T> inverse(const DenseMatrix<T>& m) {
  if (!m.is_square()) throw MahlerError(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  DenseMatrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  std::vector<std::size_t> pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) {
    throw MahlerError(ErrorKind::SingularMatrix, "matrix is not invertible");
  }
  DenseMatrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

/// Unique solution of m x = b for square invertible m; throws SingularMatrix.
template <class T>
std::vector<T> solve(const DenseMatrix<T>& m, const std::vector<T>& b) {
  const std::size_t n = m.rows();
  DenseMatrix<T> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  std::vector<std::size_t> pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) {
    throw MahlerError(ErrorKind::SingularMatrix, "linear system is singular");
  }
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

template <class T>
DenseMatrix<T> power(const DenseMatrix<T>& m, unsigned k) {
  DenseMatrix<T> out = DenseMatrix<T>::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace mahler
