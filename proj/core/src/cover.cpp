#include "lva/cover.hpp"

#include <algorithm>
#include <set>

#include "lva/errors.hpp"

namespace lva {

Cocycle::Cocycle(Lattice l) : lattice_(std::move(l)) {}

int Cocycle::exponent(const LatticeVector& a, const LatticeVector& b) const {
  const std::size_t n = rank();
  if (a.size() != n || b.size() != n) throw DomainError("cocycle: dimension mismatch");
  long long e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((a[i] & 1) == 0) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if ((b[j] & 1) && (lattice_.gram()(i, j) & 1)) ++e;
    }
  }
  return static_cast<int>(e & 1);
}

Cocycle build_cocycle(const Lattice& l) { return Cocycle(l); }

TwistedGroupElement TwistedGroupElement::basis(const Ring& ring, const LatticeVector& a) {
  TwistedGroupElement x;
  x.terms.emplace(a, ring.one());
  return x;
}

TwistedGroupElement twisted_add(const Ring& ring, const TwistedGroupElement& x, const TwistedGroupElement& y) {
  TwistedGroupElement out = x;
  for (const auto& [a, c] : y.terms) {
    auto [it, inserted] = out.terms.emplace(a, c);
    if (!inserted) {
      it->second = ring.add(it->second, c);
      if (ring.is_zero(it->second)) out.terms.erase(it);
    }
  }
  return out;
}

TwistedGroupElement twisted_multiply(const Ring& ring, const Cocycle& eps, const TwistedGroupElement& x,
                                     const TwistedGroupElement& y) {
  TwistedGroupElement out;
  for (const auto& [a, ca] : x.terms) {
    for (const auto& [b, cb] : y.terms) {
      RingElement c = ring.mul(ca, cb);
      if (eps.exponent(a, b)) c = ring.negate(c);
      auto [it, inserted] = out.terms.emplace(a + b, c);
      if (!inserted) it->second = ring.add(it->second, c);
      if (ring.is_zero(it->second)) out.terms.erase(it);
    }
  }
  return out;
}

namespace {

std::vector<long long> coordinates_in(const IntMatrix& h, std::size_t col) {
  std::vector<long long> v(h.rows());
  for (std::size_t r = 0; r < h.rows(); ++r) v[r] = h(r, col);
  return v;
}

long long mod2(long long x) { return x & 1; }

}  // namespace

CoverAutomorphism::CoverAutomorphism(Ring ring, std::shared_ptr<const Cocycle> eps, IntMatrix h,
                                     std::vector<RingElement> eta_basis)
    : ring_(std::move(ring)), eps_(std::move(eps)), h_(std::move(h)), eta_(std::move(eta_basis)) {
  const Lattice& l = eps_->lattice();
  const std::size_t n = l.rank();
  if (!l.preserves_form(h_)) throw DomainError("cover lift: h does not preserve the Gram matrix");
  if (eta_.size() != n) throw DomainError("cover lift: eta must have one value per basis vector");
  for (const auto& e : eta_) {
    if (!ring_.contains(e.value()) || !(ring_.mul(e, e) == ring_.one())) {
      throw DomainError("cover lift: eta value " + ring_.format(e) + " is not in mu_2");
    }
  }
  delta_exp_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const LatticeVector hi(coordinates_in(h_, i));
    for (std::size_t j = 0; j < n; ++j) {
      const LatticeVector hj(coordinates_in(h_, j));
      delta_exp_[i * n + j] = eps_->exponent(hi, hj) ^ eps_->exponent(l.basis_vector(i), l.basis_vector(j));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (delta(i, j) != delta(j, i)) throw DomainError("cover lift: correction term is not symmetric");
    }
  }
  // Self-test of the extension rule on pairs of small vectors.
  std::vector<LatticeVector> probes;
  for (std::size_t i = 0; i < n; ++i) {
    probes.push_back(l.basis_vector(i));
    probes.push_back(-l.basis_vector(i));
    if (i + 1 < n) probes.push_back(l.basis_vector(i) - l.basis_vector(i + 1));
  }
  for (const auto& a : probes) {
    for (const auto& b : probes) {
      RingElement lhs = eta(a + b);
      RingElement rhs = ring_.mul(eta(a), eta(b));
      if (eps_->exponent(lva::apply(h_, a), lva::apply(h_, b)) ^ eps_->exponent(a, b)) rhs = ring_.negate(rhs);
      if (!(lhs == rhs)) {
        throw DomainError("cover lift: extension rule inconsistent at " + a.str() + ", " + b.str());
      }
    }
  }
}

CoverAutomorphism CoverAutomorphism::identity(Ring ring, std::shared_ptr<const Cocycle> eps) {
  const std::size_t n = eps->rank();
  std::vector<RingElement> ones(n, ring.one());
  return CoverAutomorphism(ring, eps, IntMatrix::identity(n), std::move(ones));
}

RingElement CoverAutomorphism::eta(const LatticeVector& a) const {
  const std::size_t n = eps_->rank();
  long long q = 0;
  RingElement value = ring_.one();
  for (std::size_t i = 0; i < n; ++i) {
    const long long ci = a[i];
    if (mod2(ci)) value = ring_.mul(value, eta_[i]);
    // C(c_i, 2) d_ii, computed mod 2
    if (delta(i, i)) q += mod2(ci * (ci - 1) / 2);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (delta(i, j)) q += mod2(ci) & mod2(a[j]);
    }
  }
  return mod2(q) ? ring_.negate(value) : value;
}

int CoverAutomorphism::eta_sign(const LatticeVector& a) const {
  RingElement v = eta(a);
  if (v == ring_.one()) return 1;
  if (v == ring_.from_int(-1)) return -1;
  throw DomainError("cover lift: eta value " + ring_.format(v) + " has no sign representative");
}

TwistedGroupElement CoverAutomorphism::apply(const TwistedGroupElement& x) const {
  TwistedGroupElement out;
  for (const auto& [a, c] : x.terms) {
    RingElement v = ring_.mul(eta(a), c);
    if (!ring_.is_zero(v)) out.terms.emplace(lva::apply(h_, a), v);
  }
  return out;
}

CoverAutomorphism lift_orthogonal(const Ring& ring, std::shared_ptr<const Cocycle> eps, const IntMatrix& h,
                                  const std::vector<RingElement>& eta_basis) {
  return CoverAutomorphism(ring, std::move(eps), h, eta_basis);
}

CoverAutomorphism compose(const CoverAutomorphism& f, const CoverAutomorphism& g) {
  if (!(f.ring() == g.ring())) throw DomainError("compose: cover lifts over different rings");
  const auto& l = f.cocycle()->lattice();
  std::vector<RingElement> eta;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    const LatticeVector a = l.basis_vector(i);
    eta.push_back(f.ring().mul(f.eta(apply(g.h(), a)), g.eta(a)));
  }
  return CoverAutomorphism(f.ring(), f.cocycle(), f.h() * g.h(), std::move(eta));
}

CoverAutomorphism inverse(const CoverAutomorphism& f) {
  const auto& l = f.cocycle()->lattice();
  // h^{-1} = G^{-1} h^T G for h in O(L).
  RationalMatrix r = l.gram_inverse() * to_rational(f.h().transpose() * l.gram());
  IntMatrix hinv(l.rank(), l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i) {
    for (std::size_t j = 0; j < l.rank(); ++j) {
      if (r(i, j).get_den() != 1) throw DomainError("inverse: h is not an integral isometry");
      hinv(i, j) = r(i, j).get_num().get_si();
    }
  }
  std::vector<RingElement> eta;
  for (std::size_t i = 0; i < l.rank(); ++i) eta.push_back(f.eta(apply(hinv, l.basis_vector(i))));
  return CoverAutomorphism(f.ring(), f.cocycle(), std::move(hinv), std::move(eta));
}

CoverGroup cover_group(const Ring& ring, const Lattice& l, std::size_t cap) {
  CoverGroup g;
  const auto mu2 = ring.mu2_elements();
  const std::size_t n = l.rank();
  const auto orth = orthogonal_group(l, cap);
  g.mu2_order = mu2.size();
  g.orthogonal_order = orth.order();

  std::size_t kernel_size = 1;
  for (std::size_t i = 0; i < n; ++i) kernel_size *= mu2.size();
  if (kernel_size * orth.order() > cap) {
    throw ResourceCapExceeded("cover group of " + l.name() + " has more than " + std::to_string(cap) + " elements");
  }

  auto eps = std::make_shared<const Cocycle>(l);
  std::vector<std::vector<RingElement>> etas{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<RingElement>> next;
    for (const auto& prefix : etas) {
      for (const auto& m : mu2) {
        next.push_back(prefix);
        next.back().push_back(m);
      }
    }
    etas = std::move(next);
  }
  for (const auto& h : orth.elements()) {
    for (const auto& eta : etas) g.elements.push_back(lift_orthogonal(ring, eps, h, eta));
  }

  std::set<CoverAutomorphism> members(g.elements.begin(), g.elements.end());
  std::set<IntMatrix> images;
  for (const auto& e : g.elements) {
    if (e.is_kernel()) ++g.kernel_order;
    images.insert(e.h());
  }
  g.image_order = images.size();

  // Closure: every element times a deterministic sample, and inverses.
  const std::size_t stride = std::max<std::size_t>(1, g.elements.size() / 32);
  g.closed = true;
  for (const auto& e : g.elements) {
    if (!members.count(inverse(e))) g.closed = false;
    for (std::size_t k = 0; k < g.elements.size() && g.closed; k += stride) {
      if (!members.count(compose(e, g.elements[k]))) g.closed = false;
    }
    if (!g.closed) break;
  }
  g.exact = g.closed && g.kernel_order == kernel_size && g.image_order == orth.order() &&
            g.elements.size() == kernel_size * orth.order();
  return g;
}

}  // namespace lva
