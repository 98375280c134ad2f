#pragma once

#include <map>
#include <memory>
#include <vector>

#include "lva/coefficients.hpp"
#include "lva/lattice.hpp"

namespace lva {

/// The bimultiplicative sign cocycle on L x L determined by an ordered basis:
/// eps(alpha_i, alpha_j) = (-1)^{<alpha_i, alpha_j>} for i > j and 1 otherwise.
class Cocycle {
 public:
  explicit Cocycle(Lattice l);

  const Lattice& lattice() const { return lattice_; }
  std::size_t rank() const { return lattice_.rank(); }

  /// Entry of the basis table, +1 or -1.
  int basis_sign(std::size_t i, std::size_t j) const { return i > j && (lattice_.gram()(i, j) & 1) ? -1 : 1; }

  /// Exponent in {0, 1} with eps(a, b) = (-1)^exponent.
  int exponent(const LatticeVector& a, const LatticeVector& b) const;
  int sign(const LatticeVector& a, const LatticeVector& b) const { return exponent(a, b) ? -1 : 1; }

 private:
  Lattice lattice_;
};

Cocycle build_cocycle(const Lattice& l);

/// A finite R-linear combination of the symbols iota(e_a).
struct TwistedGroupElement {
  std::map<LatticeVector, RingElement> terms;

  static TwistedGroupElement basis(const Ring& ring, const LatticeVector& a);
  friend bool operator==(const TwistedGroupElement&, const TwistedGroupElement&) = default;
};

TwistedGroupElement twisted_add(const Ring& ring, const TwistedGroupElement& x, const TwistedGroupElement& y);
TwistedGroupElement twisted_multiply(const Ring& ring, const Cocycle& eps, const TwistedGroupElement& x,
                                     const TwistedGroupElement& y);

/// A lift (h, eta) of h in O(L) to the cover: iota(e_a) -> eta(a) iota(e_{ha}).
///
/// eta is stored on the basis. Its value on a = sum c_i alpha_i is
///   eta(a) = (-1)^{q(a)} prod eta_i^{c_i}
/// with q the quadratic refinement of d(a, b), where (-1)^{d(a,b)} =
/// eps(ha, hb) eps(a, b). This is the unique solution of
/// eta(a + b) = eta(a) eta(b) eps(ha, hb) eps(a, b)^{-1} with the given basis values.
class CoverAutomorphism {
 public:
  /// Throws DomainError if h does not preserve the form, an eta value is not
  /// in mu_2(ring), or the extension rule fails its self-test.
  CoverAutomorphism(Ring ring, std::shared_ptr<const Cocycle> eps, IntMatrix h, std::vector<RingElement> eta_basis);

  static CoverAutomorphism identity(Ring ring, std::shared_ptr<const Cocycle> eps);

  const Ring& ring() const { return ring_; }
  const std::shared_ptr<const Cocycle>& cocycle() const { return eps_; }
  const IntMatrix& h() const { return h_; }
  const std::vector<RingElement>& eta_basis() const { return eta_; }

  RingElement eta(const LatticeVector& a) const;
  /// eta(a) as +1 or -1; throws DomainError for mu_2 elements other than +-1.
  int eta_sign(const LatticeVector& a) const;

  TwistedGroupElement apply(const TwistedGroupElement& x) const;

  /// True when h is the identity (a Hom(L, mu_2) element).
  bool is_kernel() const { return h_.is_identity(); }

  friend bool operator==(const CoverAutomorphism& a, const CoverAutomorphism& b) {
    return a.h_ == b.h_ && a.eta_ == b.eta_;
  }
  friend bool operator<(const CoverAutomorphism& a, const CoverAutomorphism& b) {
    if (a.h_ == b.h_) return a.eta_ < b.eta_;
    return a.h_ < b.h_;
  }

 private:
  int delta(std::size_t i, std::size_t j) const { return delta_exp_[i * eps_->rank() + j]; }

  Ring ring_;
  std::shared_ptr<const Cocycle> eps_;
  IntMatrix h_;
  std::vector<RingElement> eta_;
  std::vector<int> delta_exp_;
};

CoverAutomorphism lift_orthogonal(const Ring& ring, std::shared_ptr<const Cocycle> eps, const IntMatrix& h,
                                  const std::vector<RingElement>& eta_basis);

/// f o g.
CoverAutomorphism compose(const CoverAutomorphism& f, const CoverAutomorphism& g);
CoverAutomorphism inverse(const CoverAutomorphism& f);

struct CoverGroup {
  std::vector<CoverAutomorphism> elements;
  std::size_t mu2_order = 0;
  std::size_t orthogonal_order = 0;
  std::size_t kernel_order = 0;
  std::size_t image_order = 0;
  /// Closed under composition and inverses (checked on all elements against
  /// a generating sample).
  bool closed = false;
  /// kernel = mu_2^rank, image = O(L), order = product.
  bool exact = false;

  std::size_t order() const { return elements.size(); }
};

/// All lifts of all elements of O(L) over the ring.
CoverGroup cover_group(const Ring& ring, const Lattice& l, std::size_t cap = default_group_cap());

}  // namespace lva
