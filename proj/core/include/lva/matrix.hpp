#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "lva/coefficients.hpp"

namespace lva {

/// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  bool is_identity() const { return *this == identity(rows_); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (i) os << ", ";
      os << '[';
      for (std::size_t j = 0; j < m.cols_; ++j) {
        if (j) os << ", ";
        os << m(i, j);
      }
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<long long>;
using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

struct MatrixHash {
  std::size_t operator()(const IntMatrix& m) const {
    std::size_t h = m.rows() * 31 + m.cols();
    for (long long x : m.data()) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
    return h;
  }
  std::size_t operator()(const RationalMatrix& m) const {
    std::size_t h = m.rows() * 31 + m.cols();
    for (const Rational& x : m.data()) h = h * 1000003u ^ hash_value(x);
    return h;
  }
};

// Exact linear algebra helpers.

Integer determinant(const IntMatrix& m);
RationalMatrix to_rational(const IntMatrix& m);
/// Throws DomainError if singular.
RationalMatrix inverse(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Row-style Hermite normal form: returns the nonzero rows, echelon form with
/// positive pivots and entries above each pivot reduced into [0, pivot).
IntegerMatrix hermite_normal_form(IntegerMatrix rows);

/// True if v lies in the Z-span of the rows of a matrix already in HNF.
bool in_row_lattice(const IntegerMatrix& hnf, const std::vector<Integer>& v);

}  // namespace lva
