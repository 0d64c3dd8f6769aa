#pragma once

// Dense matrices over Q(i) with exact Gauss-Jordan elimination.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/scalar.hpp"

namespace cremona {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<Scalar> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
        }
      }
    }
    return out;
  }

  friend Matrix operator*(const Scalar& s, Matrix m) {
    for (auto& x : m.data_) x *= s;
    return m;
  }

  std::vector<Scalar> apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    std::vector<Scalar> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
      }
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix conjugate_transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
    }
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  /// First nonzero entry in row-major order.
  std::optional<Scalar> first_nonzero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return x;
    }
    return std::nullopt;
  }

  /// In-place reduced row-echelon form; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      const Scalar inv = (*this)(r, c).inverse();
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        const Scalar f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) {
          if (!(*this)(r, j).is_zero()) (*this)(i, j) -= f * (*this)(r, j);
        }
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  Matrix rref() const {
    Matrix m = *this;
    m.rref_in_place();
    return m;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref_in_place().size();
  }

  /// Basis of {v : A v = 0}, one column vector per entry.
  std::vector<std::vector<Scalar>> null_space() const {
    Matrix m = *this;
    auto pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Scalar> v(cols_);
      v[free] = Scalar(1);
      for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::optional<Matrix> inverse() const {
    if (!is_square()) throw InputError("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = Scalar(1);
    }
    auto pivots = aug.rref_in_place();
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    }
    return inv;
  }

  bool is_invertible() const { return is_square() && rank() == rows_; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
    }
    return s + "]";
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Nonzero lambda with a == lambda * b, if one exists.
inline std::optional<Scalar> proportionality(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  std::optional<Scalar> lambda;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const bool za = a(i, j).is_zero(), zb = b(i, j).is_zero();
      if (za != zb) return std::nullopt;
      if (za) continue;
      Scalar r = a(i, j) / b(i, j);
      if (!lambda) {
        lambda = r;
      } else if (!(*lambda == r)) {
        return std::nullopt;
      }
    }
  }
  return lambda;
}

/// Projective equality of coordinate vectors (both nonzero, proportional).
inline bool projectively_equal(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) return false;
  std::optional<std::size_t> ref;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].is_zero() != b[k].is_zero()) return false;
    if (!a[k].is_zero() && !ref) ref = k;
  }
  if (!ref) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] * b[*ref] == b[k] * a[*ref])) return false;
  }
  return true;
}

}  // namespace cremona
