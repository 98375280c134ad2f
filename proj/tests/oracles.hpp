#pragma once

// Independent reference computations used only by the tests. Everything here
// is deliberately naive (box searches, explicit series expansion, partition
// enumeration) and shares no code with the library beyond its value types.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "lva/coefficients.hpp"
#include "lva/lattice.hpp"

namespace oracle {

using lva::Integer;
using lva::IntMatrix;
using lva::LatticeVector;
using lva::Rational;

inline long long inner(const IntMatrix& g, const std::vector<long long>& x, const std::vector<long long>& y) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g(i, j) * y[j];
  return s;
}

/// Residues x in Z/n with x^2 = 1.
inline std::vector<long long> mu2_mod(long long n) {
  std::vector<long long> out;
  for (long long x = 0; x < n; ++x)
    if ((x * x) % n == 1 % n) out.push_back(x);
  return out;
}

/// Calls f on every integer vector in the box [-b, b]^rank.
inline void for_box(std::size_t rank, long long b, const std::function<void(const std::vector<long long>&)>& f) {
  std::vector<long long> x(rank, -b);
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < rank && x[i] == b) x[i++] = -b;
    if (i == rank) return;
    ++x[i];
  }
}

/// Box radius guaranteed to contain every vector of norm <= bound: for
/// positive-definite G, x_i^2 <= bound * (G^-1)_ii. The floating-point bound
/// is padded by one.
inline long long box_radius(const lva::Lattice& l, long long bound) {
  double worst = 0;
  for (std::size_t i = 0; i < l.rank(); ++i) worst = std::max(worst, l.gram_inverse()(i, i).get_d());
  return static_cast<long long>(std::sqrt(worst * static_cast<double>(bound))) + 1;
}

/// All nonzero v with <v,v> <= bound, sorted lexicographically.
inline std::vector<LatticeVector> short_vectors(const lva::Lattice& l, long long bound) {
  std::vector<LatticeVector> out;
  for_box(l.rank(), oracle::box_radius(l, bound), [&](const std::vector<long long>& x) {
    const long long n = inner(l.gram(), x, x);
    if (n > 0 && n <= bound) out.emplace_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of integer matrices h with h^T G h = G, by choosing every column
/// among the vectors of the right norm.
inline std::size_t orthogonal_order(const lva::Lattice& l) {
  const std::size_t n = l.rank();
  long long top = 0;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, l.gram()(i, i));
  const auto cand = oracle::short_vectors(l, top);
  std::vector<const LatticeVector*> cols(n);
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      ++count;
      return;
    }
    for (const auto& v : cand) {
      if (inner(l.gram(), v.coords, v.coords) != l.gram()(k, k)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = inner(l.gram(), cols[j]->coords, v.coords) == l.gram()(j, k);
      if (!ok) continue;
      cols[k] = &v;
      rec(k + 1);
    }
  };
  rec(0);
  // h^T G h = G forces det(h)^2 = 1, so every such h is invertible over Z.
  return count;
}

/// Number of colored partitions of w with `colors` colors, by enumerating
/// ordinary partitions and counting the colorings of each part multiplicity.
inline Integer colored_partitions(std::size_t colors, long long w) {
  Integer total = 0;
  std::function<void(long long, long long, Integer)> rec = [&](long long rest, long long max_part, Integer ways) {
    if (rest == 0) {
      total += ways;
      return;
    }
    for (long long part = std::min(rest, max_part); part >= 1; --part) {
      for (long long mult = 1; mult * part <= rest; ++mult) {
        // multisets of size mult from `colors` colors
        Integer c = 1;
        for (long long t = 0; t < mult; ++t) {
          c *= static_cast<long>(static_cast<long long>(colors) + t);
          c /= static_cast<long>(t + 1);
        }
        rec(rest - mult * part, part - 1, ways * c);
      }
    }
  };
  rec(w, w, Integer(1));
  return total;
}

/// dim (V_L)_w from a box count of lattice vectors and colored partitions.
inline Integer graded_dimension(const lva::Lattice& l, long long w) {
  Integer total = 0;
  const long long radius = box_radius(l, 2 * w);
  for_box(l.rank(), radius, [&](const std::vector<long long>& x) {
    const long long half = inner(l.gram(), x, x) / 2;
    if (half <= w) total += colored_partitions(l.rank(), w - half);
  });
  return total;
}

/// Polynomial in commuting variables x_{k,i} = alpha_i(-k); a monomial is a
/// sorted list of (k, i).
using Monomial = std::vector<std::pair<int, int>>;
using Poly = std::map<Monomial, Rational>;

inline Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out[m] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Coefficient of z^m in exp(sum_{k >= 1} a(-k) z^k / k), expanded naively as
/// sum_j (1/j!) X^j with X truncated at degree m.
inline Poly exp_coefficient(const std::vector<long long>& a, long long m) {
  if (m < 0) return {};
  // X as a map degree -> polynomial
  std::vector<Poly> x(static_cast<std::size_t>(m) + 1);
  for (long long k = 1; k <= m; ++k) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      Rational q(static_cast<long>(a[i]), static_cast<long>(k));
      q.canonicalize();
      x[k][{{static_cast<int>(k), static_cast<int>(i)}}] += q;
    }
  }
  std::vector<Poly> total(static_cast<std::size_t>(m) + 1);
  total[0][{}] = 1;
  std::vector<Poly> power(static_cast<std::size_t>(m) + 1);
  power[0][{}] = 1;
  Integer fact = 1;
  for (long long j = 1; j <= m; ++j) {
    std::vector<Poly> next(static_cast<std::size_t>(m) + 1);
    for (long long d = 0; d <= m; ++d)
      for (long long e = 1; d + e <= m; ++e) {
        for (const auto& [mono, c] : multiply(power[d], x[e])) next[d + e][mono] += c;
      }
    power = next;
    fact *= static_cast<long>(j);
    for (long long d = 0; d <= m; ++d)
      for (const auto& [mono, c] : power[d]) total[d][mono] += c / Rational(fact);
  }
  Poly out = total[m];
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// eps(a, b) from the defining bimultiplicative formula.
inline int cocycle_sign(const IntMatrix& g, const std::vector<long long>& a, const std::vector<long long>& b) {
  long long e = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) e += a[i] * b[j] * g(i, j);
  return (e % 2 == 0) ? 1 : -1;
}

}  // namespace oracle
