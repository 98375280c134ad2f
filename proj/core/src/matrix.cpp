#include "lva/matrix.hpp"

#include <utility>

#include "lva/errors.hpp"

namespace lva {

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m(i, j));
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = static_cast<long>(m(i, j));
  return r;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw DomainError("matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

IntegerMatrix hermite_normal_form(IntegerMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(a, j), m(b, j));
  };
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    // Euclid on column `col` over rows r.. until a single nonzero remains.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (m(i, col) != 0 && (best == rows || abs(m(i, col)) < abs(m(best, col)))) best = i;
      }
      if (best == rows) break;
      swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m(i, col) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(r, col).get_mpz_t());
        for (std::size_t j = col; j < cols; ++j) m(i, j) -= q * m(r, j);
        if (m(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, col) == 0) continue;
    if (m(r, col) < 0) {
      for (std::size_t j = col; j < cols; ++j) m(r, j) = -m(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(r, col).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = col; j < cols; ++j) m(i, j) -= q * m(r, j);
    }
    pivot_cols.push_back(col);
    ++r;
  }
  IntegerMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return out;
}

bool in_row_lattice(const IntegerMatrix& hnf, const std::vector<Integer>& v) {
  if (v.size() != hnf.cols()) throw DomainError("vector length does not match lattice dimension");
  std::vector<Integer> rest = v;
  std::size_t col = 0;
  for (std::size_t i = 0; i < hnf.rows(); ++i) {
    while (col < hnf.cols() && hnf(i, col) == 0) {
      if (rest[col] != 0) return false;
      ++col;
    }
    if (col == hnf.cols()) break;
    if (!mpz_divisible_p(rest[col].get_mpz_t(), hnf(i, col).get_mpz_t())) return false;
    Integer q = rest[col] / hnf(i, col);
    for (std::size_t j = col; j < hnf.cols(); ++j) rest[j] -= q * hnf(i, j);
    ++col;
  }
  for (const auto& x : rest) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace lva
