#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lva {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RingKind { rationals, integers, prime_field, modular };

class Ring;

/// An exact element of one of the supported coefficient rings.
///
/// The value is always a canonical rational: reduced with positive
/// denominator for Q, an integer for Z, and a residue in [0, n) for the
/// finite rings. Only a Ring can create non-trivial elements, which keeps
/// the canonical-form invariant in one place.
class RingElement {
 public:
  RingElement() = default;

  const Rational& value() const { return value_; }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const RingElement& a, const RingElement& b) {
    return a.value_ < b.value_;
  }

 private:
  friend class Ring;
  explicit RingElement(Rational v) : value_(std::move(v)) {}
  Rational value_;
};

class Ring {
 public:
  static Ring rationals();
  static Ring integers();
  /// Throws InputError unless p is prime.
  static Ring prime_field(long long p);
  /// Z/nZ, n >= 2.
  static Ring modular(long long n);
  /// Accepts the CLI tokens "Q", "Z", "Fp:<p>", "Zn:<n>".
  static Ring parse(std::string_view token);

  RingKind kind() const { return kind_; }
  long long modulus() const { return modulus_; }
  bool is_finite() const { return modulus_ != 0; }
  std::string token() const;

  RingElement zero() const { return RingElement(Rational(0)); }
  RingElement one() const { return from_integer(1); }
  RingElement from_integer(const Integer& n) const;
  RingElement from_int(long long n) const { return from_integer(Integer(static_cast<long>(n))); }

  /// Image of a rational under the canonical map Z[1/S] -> R, if the
  /// denominator is invertible in R.
  std::optional<RingElement> try_specialize(const Rational& q) const;
  /// As try_specialize, throwing SpecializationError on failure.
  RingElement specialize(const Rational& q) const;

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement negate(const RingElement& a) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement pow(const RingElement& a, long long e) const;

  bool is_zero(const RingElement& a) const { return sgn(a.value()) == 0; }
  bool is_unit(const RingElement& a) const;
  /// Throws DomainError if a is not a unit.
  RingElement inverse(const RingElement& a) const;
  RingElement divide(const RingElement& a, const RingElement& b) const;

  /// Solutions of x^2 = 1, in canonical order.
  std::vector<RingElement> mu2_elements() const;

  /// True if q is a canonical representative of an element of this ring.
  bool contains(const Rational& q) const;

  std::string format(const RingElement& a) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  Ring(RingKind kind, long long modulus) : kind_(kind), modulus_(modulus) {}
  RingElement reduce(Integer n) const;

  RingKind kind_ = RingKind::rationals;
  long long modulus_ = 0;
};

std::vector<RingElement> mu2_elements(const Ring& ring);
bool is_unit(const Ring& ring, const RingElement& x);

bool is_prime(long long n);

/// Binomial coefficient C(n, k) for arbitrary integer n and k >= 0.
Integer binomial(long long n, long long k);

Integer factorial(long long n);

std::size_t hash_value(const Rational& q);

/// num/den from machine integers (gmpxx has no long long constructors).
inline Rational make_rational(long long num, long long den = 1) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

}  // namespace lva
