#pragma once

#include <map>
#include <string>
#include <vector>

#include "lva/coefficients.hpp"
#include "lva/lattice.hpp"

namespace lva {

/// The creation operator alpha_index(-depth), depth >= 1. Indices are 0-based.
struct Mode {
  int depth = 1;
  int index = 0;
  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// prod alpha_i(-n) e_lambda with the modes kept sorted by (depth, index).
struct FockState {
  LatticeVector lattice_point;
  std::vector<Mode> modes;

  FockState() = default;
  explicit FockState(LatticeVector lambda, std::vector<Mode> m = {});

  long long mode_depth() const;
  long long weight(const Lattice& l) const { return l.norm(lattice_point) / 2 + mode_depth(); }
  std::string str() const;

  friend bool operator==(const FockState&, const FockState&) = default;
  friend auto operator<=>(const FockState& a, const FockState& b) {
    if (auto c = a.lattice_point <=> b.lattice_point; c != 0) return c;
    return a.modes <=> b.modes;
  }
};

/// Sparse vector with rational coefficients; zero coefficients are never stored.
class FockVector {
 public:
  using Terms = std::map<FockState, Rational>;

  FockVector() = default;
  explicit FockVector(const FockState& s, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const FockState& s) const;

  void add(const FockState& s, const Rational& c);
  void add(FockState&& s, const Rational& c);
  void add_scaled(const FockVector& v, const Rational& c);

  FockVector& operator+=(const FockVector& v) {
    add_scaled(v, 1);
    return *this;
  }
  FockVector& operator-=(const FockVector& v) {
    add_scaled(v, -1);
    return *this;
  }
  FockVector& operator*=(const Rational& c);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const Rational& c, FockVector a) { return a *= c; }
  friend bool operator==(const FockVector&, const FockVector&) = default;

  /// Single lattice degree, if homogeneous in it.
  bool is_lattice_homogeneous() const;
  /// Single weight, if homogeneous in it.
  bool is_weight_homogeneous(const Lattice& l) const;
  /// Throws DomainError unless every term has the given bidegree.
  void assert_bidegree(const Lattice& l, const LatticeVector& lambda, long long weight) const;

  std::string str() const;

 private:
  Terms terms_;
};

/// e_lambda.
FockVector lattice_vector(const LatticeVector& lambda);
FockVector vacuum(const Lattice& l);

/// Coefficients mapped into the ring; throws SpecializationError if a
/// denominator is not invertible there.
std::map<FockState, RingElement> specialize(const Ring& ring, const FockVector& v);

/// b(n) for b in L (x) Q given in basis coordinates.
FockVector apply_heisenberg(const Lattice& l, const std::vector<Rational>& b, long long n, const FockVector& v);
/// alpha_i(n).
FockVector apply_basis_heisenberg(const Lattice& l, std::size_t i, long long n, const FockVector& v);

/// Weight-raising operator s_{a,n}: the z^n coefficient of exp(sum_k a(-k) z^k / k).
FockVector apply_s(const Lattice& l, const LatticeVector& a, long long n, const FockVector& v);

/// s_{a,n} written as a polynomial in creation operators: each entry is a
/// multiset of depths k (meaning a(-k)) with its rational coefficient.
std::vector<std::pair<std::vector<int>, Rational>> s_polynomial(long long n);

struct GradedPieceBasis {
  LatticeVector lattice_point;
  long long weight = 0;
  std::vector<FockState> states;
};

/// All states of the given bidegree in canonical order.
GradedPieceBasis graded_piece(const Lattice& l, const LatticeVector& lambda, long long weight);

/// Lattice points with <lambda, lambda>/2 <= max_weight, zero first, then lexicographic.
std::vector<LatticeVector> lattice_points_up_to(const Lattice& l, long long max_weight);

/// All states of weight <= max_weight, ordered by weight, then lattice point,
/// then modes.
std::vector<FockState> truncation_basis(const Lattice& l, long long max_weight);
/// All states of exactly the given weight.
std::vector<FockState> weight_basis(const Lattice& l, long long weight);

/// Composites s_{a1,n1} ... s_{ak,nk} iota(e_lambda) with a_i in
/// {+-alpha_j} u {lambda}, n_i >= 1, sum n_i = weight - <lambda,lambda>/2 and
/// k <= depth_bound (negative: 2 * weight).
std::vector<FockVector> zform_spanning_set(const Lattice& l, const LatticeVector& lambda, long long weight,
                                           long long depth_bound = -1);

/// Decides whether v lies in the Z-span of zform_spanning_set at its
/// bidegree, via Hermite normal form after clearing denominators. A false
/// answer means "not proven integral" relative to the truncated spanning set.
bool integral_membership(const Lattice& l, const FockVector& v, const LatticeVector& lambda, long long weight,
                         long long depth_bound = -1);

/// True if v (possibly spread over several bidegrees) passes
/// integral_membership in every bidegree component.
bool integral_membership(const Lattice& l, const FockVector& v);

/// Rank of the spanning set equals the dimension of the graded piece.
bool zform_rank_saturated(const Lattice& l, const LatticeVector& lambda, long long weight);

/// Coefficients of prod_k (1 - q^k)^{-colors} up to q^max_n.
std::vector<Integer> colored_partitions(std::size_t colors, long long max_n);

/// Number of lattice vectors of each half-norm 0..max_n (theta series).
std::vector<Integer> theta_coefficients(const Lattice& l, long long max_n);

/// dim (V_L)_weight from the theta series and colored partitions alone.
Integer graded_dimension(const Lattice& l, long long weight);

}  // namespace lva
