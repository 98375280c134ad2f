#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lva/coefficients.hpp"
#include "lva/matrix.hpp"
#include "lva/matrix_group.hpp"

namespace lva {

/// Integer coordinates of a lattice vector in the fixed basis.
struct LatticeVector {
  std::vector<long long> coords;

  LatticeVector() = default;
  explicit LatticeVector(std::vector<long long> c) : coords(std::move(c)) {}
  LatticeVector(std::initializer_list<long long> c) : coords(c) {}

  static LatticeVector zero(std::size_t rank) { return LatticeVector(std::vector<long long>(rank, 0)); }
  static LatticeVector unit(std::size_t rank, std::size_t i) {
    auto v = zero(rank);
    v.coords[i] = 1;
    return v;
  }

  std::size_t size() const { return coords.size(); }
  long long operator[](std::size_t i) const { return coords[i]; }
  long long& operator[](std::size_t i) { return coords[i]; }
  bool is_zero() const;

  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& x : a.coords) x = -x;
    return a;
  }
  friend LatticeVector operator*(long long k, LatticeVector a) {
    for (auto& x : a.coords) x *= k;
    return a;
  }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector& a, const LatticeVector& b) { return a.coords <=> b.coords; }

  std::string str() const;
};

struct LatticeVectorHash {
  std::size_t operator()(const LatticeVector& v) const {
    std::size_t h = v.size();
    for (long long x : v.coords) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
    return h;
  }
};

/// An even positive-definite lattice given by its Gram matrix.
class Lattice {
 public:
  /// Validates symmetry, evenness and positive definiteness; throws InputError
  /// with a specific diagnostic otherwise.
  Lattice(std::string name, IntMatrix gram);

  /// Named presets: A1, A2, A1A1, D4, E8.
  static Lattice preset(std::string_view name);
  static std::vector<std::string> preset_names();
  static bool is_preset(std::string_view name);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const RationalMatrix& gram_inverse() const { return gram_inverse_; }
  const Integer& determinant() const { return det_; }

  long long inner(const LatticeVector& x, const LatticeVector& y) const;
  long long norm(const LatticeVector& x) const { return inner(x, x); }
  /// Pairing <b, x> for b in L (x) Q given by rational coordinates.
  Rational inner(const std::vector<Rational>& b, const LatticeVector& x) const;

  LatticeVector basis_vector(std::size_t i) const { return LatticeVector::unit(rank(), i); }
  LatticeVector zero() const { return LatticeVector::zero(rank()); }

  /// True if m^T G m = G.
  bool preserves_form(const IntMatrix& m) const;

 private:
  std::string name_;
  IntMatrix gram_;
  RationalMatrix gram_inverse_;
  Integer det_;
};

struct GramViolation {
  std::size_t row;  // 0-based row where the violation is detected
  std::string message;
};

/// First reason the matrix is not the Gram matrix of an even positive-definite
/// lattice (shape, symmetry, evenness, leading minors), if any.
std::optional<GramViolation> gram_violation(const IntMatrix& gram);

LatticeVector apply(const IntMatrix& m, const LatticeVector& x);

/// All v with 0 < <v,v> <= bound, lexicographically ordered.
std::vector<LatticeVector> short_vectors(const Lattice& l, long long bound);

/// The norm-2 vectors.
std::vector<LatticeVector> roots(const Lattice& l);

/// Matrix of x -> x - <x,a> a; requires <a,a> = 2.
IntMatrix reflection(const Lattice& l, const LatticeVector& a);

/// Positivity with respect to the lexicographic functional: the first
/// nonzero coordinate is positive.
bool is_positive(const LatticeVector& v);

/// Simple system of the positive roots (indecomposable positive roots), in
/// lexicographic order.
std::vector<LatticeVector> simple_roots(const Lattice& l);

constexpr std::size_t kDefaultGroupCap = 1'000'000;

/// Element cap for closure computations; LVA_GROUP_CAP overrides the default.
std::size_t default_group_cap();

using IntegerMatrixGroup = MatrixGroup<long long>;

struct CartanComponent {
  char type;  // 'A', 'D' or 'E'
  int rank;
  friend bool operator==(const CartanComponent&, const CartanComponent&) = default;
  std::string str() const { return std::string(1, type) + std::to_string(rank); }
};

/// Dynkin components of the root system, sorted by (type, rank).
std::vector<CartanComponent> cartan_type(const Lattice& l);

/// |W| predicted from the Cartan type (product of component Weyl orders).
Integer weyl_order_from_type(const std::vector<CartanComponent>& type);

/// Closure of the root reflections. Generated by the simple reflections;
/// throws ResourceCapExceeded if the predicted order exceeds the cap.
IntegerMatrixGroup weyl_group(const Lattice& l, std::size_t cap = default_group_cap());

/// All integer matrices preserving the Gram matrix, by backtracking over
/// images of the basis vectors.
IntegerMatrixGroup orthogonal_group(const Lattice& l, std::size_t cap = default_group_cap());

/// One representative per right coset W g of W in O.
std::vector<IntMatrix> outer_classes(const IntegerMatrixGroup& weyl, const IntegerMatrixGroup& orthogonal);

struct RootDatum {
  IntMatrix character_gram;                   // X = L
  std::vector<LatticeVector> roots;           // Phi
  RationalMatrix cocharacter_gram_inverse;    // data of X^v = L^v
  std::vector<LatticeVector> coroots;         // Phi^v = Phi inside L^v
  std::size_t root_span_rank = 0;             // rank of Q Phi
  bool semisimple = false;
  bool reduced = false;

  /// Duality pairing <x, a^v> = x^T G a for x in L and coroot a^v.
  long long pairing(const LatticeVector& x, const LatticeVector& coroot) const;
};

/// Builds the root datum attached to the lattice and verifies its axioms;
/// throws DomainError if any check fails.
RootDatum root_datum(const Lattice& l);

}  // namespace lva
