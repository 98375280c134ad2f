#include "lva/autgrp.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "lva/errors.hpp"

namespace lva {

namespace {

Rational rational_pow(const Rational& x, long long e) {
  if (x == 0 && e < 0) throw DomainError("torus character value 0 is not a unit");
  Integer num, den;
  const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), k);
  Rational r = e < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

std::vector<Rational> column(const IntMatrix& h, std::size_t i) {
  std::vector<Rational> c(h.rows());
  for (std::size_t r = 0; r < h.rows(); ++r) c[r] = static_cast<long>(h(r, i));
  return c;
}

// Re-applies the modes of s, transformed by h, to the vector x (which sits in
// the target lattice sector).
FockVector transport_modes(const Lattice& l, const IntMatrix& h, const FockState& s, FockVector x) {
  for (const auto& m : s.modes) x = apply_heisenberg(l, column(h, static_cast<std::size_t>(m.index)), -m.depth, x);
  return x;
}

}  // namespace

Rational TorusCharacter::operator()(const LatticeVector& lambda) const {
  if (lambda.size() != values_on_basis.size()) throw DomainError("torus character: dimension mismatch");
  Rational v = 1;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] != 0) v *= rational_pow(values_on_basis[i], lambda[i]);
  }
  return v;
}

AutAction AutAction::torus(TorusCharacter g, std::string label) { return {{std::move(g)}, std::move(label)}; }
AutAction AutAction::root_exp(RootGroupElement e, std::string label) { return {{std::move(e)}, std::move(label)}; }
AutAction AutAction::cover(CoverAutomorphism phi, std::string label) { return {{std::move(phi)}, std::move(label)}; }
AutAction AutAction::uncorrected(UncorrectedCover c, std::string label) {
  return {{std::move(c)}, std::move(label)};
}

AutAction AutAction::then_after(const AutAction& other) const {
  AutAction out = *this;
  out.factors.insert(out.factors.end(), other.factors.begin(), other.factors.end());
  out.label = label + "*" + other.label;
  return out;
}

FockVector apply_torus(const TorusCharacter& g, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) out.add(s, c * g(s.lattice_point));
  return out;
}

FockVector apply_root_exp(const LatticeVertexAlgebra& va, const RootGroupElement& e, const FockVector& v) {
  if (va.lattice().norm(e.root) != 2) throw DomainError("root group element: " + e.root.str() + " is not a root");
  const FockVector x = va.lattice_vector(e.root);
  FockVector sum = v;
  if (e.param == 0) return sum;
  FockVector term = v;
  for (long long n = 1;; ++n) {
    term = va.mode(x, 0, term);
    if (term.is_zero()) break;
    term *= e.param / make_rational(n);
    sum += term;
    if (n > 64) throw DomainError("root group exponential did not terminate");
  }
  return sum;
}

FockVector apply_cover(const Lattice& l, const CoverAutomorphism& phi, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) {
    FockVector x(FockState(apply(phi.h(), s.lattice_point)), c * phi.eta_sign(s.lattice_point));
    out += transport_modes(l, phi.h(), s, std::move(x));
  }
  return out;
}

FockVector apply_uncorrected(const Lattice& l, const UncorrectedCover& u, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) {
    int sign = 1;
    for (std::size_t i = 0; i < l.rank(); ++i) {
      if ((s.lattice_point[i] & 1) && u.eta_signs.at(i) < 0) sign = -sign;
    }
    FockVector x(FockState(apply(u.h, s.lattice_point)), c * sign);
    out += transport_modes(l, u.h, s, std::move(x));
  }
  return out;
}

FockVector apply_action(const LatticeVertexAlgebra& va, const AutAction& a, const FockVector& v) {
  FockVector x = v;
  for (auto it = a.factors.rbegin(); it != a.factors.rend(); ++it) {
    x = std::visit(
        [&](const auto& f) -> FockVector {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, TorusCharacter>) {
            return apply_torus(f, x);
          } else if constexpr (std::is_same_v<T, RootGroupElement>) {
            return apply_root_exp(va, f, x);
          } else if constexpr (std::is_same_v<T, CoverAutomorphism>) {
            return apply_cover(va.lattice(), f, x);
          } else {
            return apply_uncorrected(va.lattice(), f, x);
          }
        },
        *it);
  }
  return x;
}

CheckRecord is_vertex_automorphism(const LatticeVertexAlgebra& va, const AutAction& a, long long max_weight,
                                   std::size_t samples, std::uint64_t seed, long long max_mode) {
  const Lattice& l = va.lattice();
  CheckRecord rec{"automorphism:" + a.label, "vertex-algebra/automorphism"};
  const auto basis = truncation_basis(l, max_weight);
  std::vector<FockVector> image;
  image.reserve(basis.size());
  for (const auto& s : basis) image.push_back(apply_action(va, a, FockVector(s)));

  const FockVector one = va.vacuum();
  FockVector d = apply_action(va, a, one) - one;
  rec.record(d.is_zero(), "phi(1) - 1 = " + d.str());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const long long w = basis[i].weight(l);
    bool ok = !image[i].is_zero();
    for (const auto& [s, c] : image[i].terms()) ok = ok && s.weight(l) == w;
    rec.record(ok, "phi(" + basis[i].str() + ") = " + image[i].str() + " changes the weight");
  }

  auto check = [&](std::size_t i, std::size_t j, long long n) {
    FockVector lhs = apply_action(va, a, va.mode(basis[i], n, basis[j]));
    FockVector rhs = va.mode(image[i], n, image[j]);
    FockVector diff = lhs - rhs;
    std::ostringstream what;
    what << "u=" << basis[i].str() << " n=" << n << " v=" << basis[j].str() << ": phi(u_n v) - phi(u)_n phi(v) = "
         << diff.str();
    rec.record(diff.is_zero(), what.str());
  };
  const std::size_t nb = basis.size();
  if (samples == 0) {
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        const long long top = basis[i].weight(l) + basis[j].weight(l) - 1;
        for (long long n = -max_mode; n <= top; ++n) check(i, j, n);
      }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
      const std::size_t i = rng() % nb, j = rng() % nb;
      const long long top = basis[i].weight(l) + basis[j].weight(l) - 1;
      const long long n = -max_mode + static_cast<long long>(rng() % static_cast<std::uint64_t>(top + max_mode + 1));
      check(i, j, n);
    }
  }
  return rec;
}

namespace {

struct TruncationIndex {
  std::vector<FockState> basis;
  std::map<FockState, std::size_t> index;

  TruncationIndex(const Lattice& l, long long N) : basis(truncation_basis(l, N)) {
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  }
};

RationalMatrix matrix_from_images(const TruncationIndex& t, const std::function<FockVector(const FockVector&)>& f) {
  const std::size_t n = t.basis.size();
  RationalMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    FockVector img = f(FockVector(t.basis[j]));
    for (const auto& [s, c] : img.terms()) {
      auto it = t.index.find(s);
      if (it == t.index.end()) throw DomainError("action leaves the truncation: image contains " + s.str());
      m(it->second, j) = c;
    }
  }
  return m;
}

RationalMatrix action_matrix(const LatticeVertexAlgebra& va, const AutAction& a, const TruncationIndex& t) {
  return matrix_from_images(t, [&](const FockVector& v) { return apply_action(va, a, v); });
}

TorusCharacter compose_character(const Lattice& l, const TorusCharacter& g, const IntMatrix& h) {
  // lambda -> g(h lambda)
  TorusCharacter out;
  for (std::size_t i = 0; i < l.rank(); ++i) out.values_on_basis.push_back(g(apply(h, l.basis_vector(i))));
  return out;
}

std::vector<TorusCharacter> sample_characters(const Lattice& l, std::size_t samples, std::uint64_t seed) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<TorusCharacter> out;
  TorusCharacter generic;
  for (std::size_t i = 0; i < l.rank(); ++i) generic.values_on_basis.push_back(Rational(primes[i % 12]));
  out.push_back(generic);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    TorusCharacter g;
    for (std::size_t i = 0; i < l.rank(); ++i) {
      long num = static_cast<long>(rng() % 7) + 1;
      long den = static_cast<long>(rng() % 5) + 1;
      if (rng() & 1) num = -num;
      Rational q(num, den);
      q.canonicalize();
      g.values_on_basis.push_back(q);
    }
    out.push_back(g);
  }
  return out;
}

std::string matrix_str(const RationalMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

}  // namespace

RationalMatrix matrix_on_truncation(const LatticeVertexAlgebra& va, const AutAction& a, long long N) {
  if (N < 0) throw DomainError("truncation weight must be non-negative");
  return action_matrix(va, a, TruncationIndex(va.lattice(), N));
}

Rational dual_root_normalization(const LatticeVertexAlgebra& va, const LatticeVector& alpha) {
  FockVector p = va.mode(va.lattice_vector(alpha), 1, va.lattice_vector(-alpha));
  const FockState vac(va.lattice().zero());
  if (p.size() != 1 || p.coefficient(vac) == 0) {
    throw DomainError("(e_alpha)_1 e_{-alpha} is not a nonzero multiple of the vacuum: " + p.str());
  }
  return p.coefficient(vac);
}

AutAction tits_element(const LatticeVertexAlgebra& va, const LatticeVector& alpha) {
  if (va.lattice().norm(alpha) != 2) throw DomainError("tits element: " + alpha.str() + " is not a root");
  const Rational c = dual_root_normalization(va, alpha);
  AutAction up = AutAction::root_exp({alpha, Rational(1)});
  AutAction down = AutAction::root_exp({-alpha, Rational(-1) / c});
  AutAction n = up.then_after(down).then_after(up);
  n.label = "n" + alpha.str();
  return n;
}

TorusCharacter coroot_sign_character(const Lattice& l, const LatticeVector& alpha) {
  TorusCharacter g;
  for (std::size_t i = 0; i < l.rank(); ++i)
    g.values_on_basis.push_back(Rational((l.inner(alpha, l.basis_vector(i)) & 1) ? -1 : 1));
  return g;
}

namespace {

std::vector<RationalMatrix> tits_generators(const LatticeVertexAlgebra& va, const TruncationIndex& t) {
  const Lattice& l = va.lattice();
  std::vector<RationalMatrix> gens;
  for (const auto& alpha : roots(l)) gens.push_back(action_matrix(va, tits_element(va, alpha), t));
  for (std::size_t i = 0; i < l.rank(); ++i) {
    TorusCharacter g;
    for (std::size_t j = 0; j < l.rank(); ++j) g.values_on_basis.push_back(Rational(i == j ? -1 : 1));
    gens.push_back(action_matrix(va, AutAction::torus(g), t));
  }
  return gens;
}

}  // namespace

TruncatedMatrixGroup tits_group(const LatticeVertexAlgebra& va, long long N, std::size_t cap) {
  TruncationIndex t(va.lattice(), N);
  TruncatedMatrixGroup g;
  g.truncation_weight = N;
  g.group = RationalMatrixGroup::closure(tits_generators(va, t), t.basis.size(), cap);
  g.basis = std::move(t.basis);
  return g;
}

TitsRelationsReport tits_relations(const LatticeVertexAlgebra& va, long long N, std::size_t samples,
                                   std::uint64_t seed) {
  const Lattice& l = va.lattice();
  TitsRelationsReport rep;
  TruncationIndex t(l, N);
  const auto chars = sample_characters(l, samples, seed);
  for (const auto& alpha : roots(l)) {
    const AutAction n = tits_element(va, alpha);
    const RationalMatrix mn = action_matrix(va, n, t);
    const RationalMatrix sq = action_matrix(va, AutAction::torus(coroot_sign_character(l, alpha)), t);
    rep.square.record(mn * mn == sq, "n" + alpha.str() + "^2 = " + matrix_str(mn * mn));

    const RationalMatrix mn_inv = inverse(mn);
    const IntMatrix s = reflection(l, alpha);
    for (const auto& g : chars) {
      const RationalMatrix lhs = mn * action_matrix(va, AutAction::torus(g), t) * mn_inv;
      const RationalMatrix rhs = action_matrix(va, AutAction::torus(compose_character(l, g, s)), t);
      rep.conjugation.record(lhs == rhs, "n" + alpha.str() + " g n^-1 = " + matrix_str(lhs));
    }
    for (const auto& st : t.basis) {
      FockVector img = apply_action(va, n, FockVector(st));
      const LatticeVector target = apply(s, st.lattice_point);
      bool ok = !img.is_zero();
      for (const auto& [x, c] : img.terms()) ok = ok && x.lattice_point == target;
      rep.sector_map.record(ok, "n" + alpha.str() + "(" + st.str() + ") = " + img.str());
    }
  }
  return rep;
}

namespace {

struct CoverImage {
  std::vector<CoverAutomorphism> elements;
  std::vector<RationalMatrix> matrices;
  RationalMatrixGroup group;
};

CoverImage cover_image(const LatticeVertexAlgebra& va, const TruncationIndex& t) {
  CoverImage img;
  auto cg = cover_group(Ring::rationals(), va.lattice());
  img.elements = std::move(cg.elements);
  for (const auto& phi : img.elements) img.matrices.push_back(action_matrix(va, AutAction::cover(phi), t));
  img.group = RationalMatrixGroup({}, img.matrices);
  return img;
}

}  // namespace

CheckRecord divided_power_check(const LatticeVertexAlgebra& va, long long max_weight, long long max_n) {
  const Lattice& l = va.lattice();
  CheckRecord rec{"divided-powers", "integral-form/divided-powers-of-root-modes"};
  const auto gens = zform_generators(l, max_weight);
  for (const auto& alpha : roots(l)) {
    const FockVector x = va.lattice_vector(alpha);
    for (const auto& v : gens) {
      FockVector term = v;
      for (long long n = 1; n <= max_n; ++n) {
        term = va.mode(x, 0, term);
        term *= make_rational(1, n);
        if (term.is_zero()) break;
        if (integral_membership(l, term)) {
          rec.record(true);
        } else {
          rec.record(false, "(e_" + alpha.str() + ")_0^" + std::to_string(n) + "/" + std::to_string(n) + "! (" +
                                v.str() + ") = " + term.str());
        }
      }
    }
  }
  return rec;
}

std::optional<IntMatrix> find_twisting_isometry(const Lattice& l) {
  const Cocycle eps(l);
  const auto o = orthogonal_group(l);
  for (const auto& h : o.elements()) {
    for (std::size_t i = 0; i < l.rank(); ++i) {
      for (std::size_t j = 0; j < l.rank(); ++j) {
        const LatticeVector a = l.basis_vector(i), b = l.basis_vector(j);
        if (eps.exponent(apply(h, a), apply(h, b)) != eps.exponent(a, b)) return h;
      }
    }
  }
  return std::nullopt;
}

MainTheoremReport main_theorem_report(const LatticeVertexAlgebra& va, long long N, long long cross_check_truncation,
                                      std::size_t samples, std::uint64_t seed) {
  const Lattice& l = va.lattice();
  MainTheoremReport rep;
  rep.lattice = l.name();
  rep.truncation = N;
  rep.cross_check_truncation = cross_check_truncation;
  for (const auto& c : cartan_type(l)) rep.cartan_type += (rep.cartan_type.empty() ? "" : "+") + c.str();
  rep.roots = roots(l).size();

  const auto W = weyl_group(l);
  const auto O = orthogonal_group(l);
  rep.weyl_order = W.order();
  rep.orthogonal_order = O.order();
  rep.outer_classes = outer_classes(W, O).size();

  TruncationIndex t(l, N);
  rep.truncation_dimension = t.basis.size();
  const CoverImage cover = cover_image(va, t);
  rep.cover_order = cover.group.order();
  std::size_t two_r = std::size_t{1} << l.rank();

  CheckRecord order{"cover-image-order", "cover/orthogonal-extension"};
  order.record(rep.cover_order == two_r * rep.orthogonal_order && rep.cover_order == cover.elements.size(),
               "cover image has " + std::to_string(rep.cover_order) + " elements, expected " +
                   std::to_string(two_r * rep.orthogonal_order));
  for (std::size_t i = 0; i < cover.elements.size(); ++i) {
    if (cover.elements[i].is_kernel()) ++rep.cover_kernel_order;
  }
  order.record(rep.cover_kernel_order == two_r, "kernel has " + std::to_string(rep.cover_kernel_order) + " elements");
  rep.checks.push_back(order);

  // Sampled pairs: matrix of a composite is the product of matrices.
  CheckRecord hom{"cover-representation", "cover/action-on-vertex-algebra"};
  std::mt19937_64 rng(seed);
  const std::size_t ne = cover.elements.size();
  const std::size_t pair_count = std::max<std::size_t>(samples, 1);
  for (std::size_t k = 0; k < pair_count; ++k) {
    const std::size_t i = rng() % ne, j = rng() % ne;
    const RationalMatrix prod = cover.matrices[i] * cover.matrices[j];
    const RationalMatrix direct = action_matrix(va, AutAction::cover(compose(cover.elements[i], cover.elements[j])), t);
    hom.record(prod == direct, "M(f)M(g) != M(f o g) for elements " + std::to_string(i) + ", " + std::to_string(j));
    hom.record(cover.group.contains(prod), "product leaves the cover image");
  }
  rep.checks.push_back(hom);

  const auto chars = sample_characters(l, samples ? 2 : 1, seed);
  std::vector<RationalMatrix> torus_mats;
  for (const auto& g : chars) torus_mats.push_back(action_matrix(va, AutAction::torus(g), t));

  CheckRecord normalizes{"cover-normalizes-torus", "cover/normalizes-torus"};
  for (std::size_t i = 0; i < ne; ++i) {
    const RationalMatrix& m = cover.matrices[i];
    const RationalMatrix minv = inverse(m);
    const IntMatrix hinv = inverse(cover.elements[i]).h();
    for (std::size_t k = 0; k < chars.size(); ++k) {
      const RationalMatrix conj = m * torus_mats[k] * minv;
      const RationalMatrix expect = action_matrix(va, AutAction::torus(compose_character(l, chars[k], hinv)), t);
      normalizes.record(conj == expect, "element " + std::to_string(i) + " conjugates a torus character to " +
                                            matrix_str(conj));
    }
  }
  rep.checks.push_back(normalizes);

  const TruncatedMatrixGroup tits = tits_group(va, N);
  rep.tits_order = tits.group.order();
  CheckRecord tits_order{"tits-order", "group/tits-extension-of-weyl"};
  tits_order.record(rep.tits_order == two_r * rep.weyl_order, "Tits group has " + std::to_string(rep.tits_order) +
                                                                  " elements, expected " +
                                                                  std::to_string(two_r * rep.weyl_order));
  rep.checks.push_back(tits_order);

  std::vector<RationalMatrix> preimage;
  for (std::size_t i = 0; i < ne; ++i) {
    if (W.contains(cover.elements[i].h())) preimage.push_back(cover.matrices[i]);
  }
  const RationalMatrixGroup pre({}, preimage);
  rep.weyl_preimage_order = pre.order();
  CheckRecord inter{"tits-equals-weyl-preimage", "group/tits-is-intersection"};
  inter.record(pre.same_elements(tits.group), "preimage of W has " + std::to_string(pre.order()) +
                                                  " matrices, Tits group " + std::to_string(tits.group.order()));
  rep.checks.push_back(inter);

  rep.quotient_order = rep.tits_order ? rep.cover_order / rep.tits_order : 0;
  CheckRecord quotient{"outer-quotient", "group/outer-automorphisms"};
  quotient.record(rep.tits_order && rep.cover_order % rep.tits_order == 0 && rep.quotient_order == rep.outer_classes &&
                      rep.outer_classes * rep.weyl_order == rep.orthogonal_order,
                  "cover/Tits = " + std::to_string(rep.quotient_order) + ", |O|/|W| = " +
                      std::to_string(rep.orthogonal_order / std::max<std::size_t>(rep.weyl_order, 1)));
  rep.checks.push_back(quotient);

  CheckRecord central{"torus-centralizer", "group/torus-centralizer"};
  for (std::size_t i = 0; i < ne; ++i) {
    bool commutes = true;
    for (const auto& tm : torus_mats) commutes = commutes && cover.matrices[i] * tm == tm * cover.matrices[i];
    central.record(commutes == cover.elements[i].is_kernel(),
                   "element " + std::to_string(i) + (commutes ? " commutes with the torus but is not a kernel element"
                                                              : " is a kernel element but does not commute"));
  }
  rep.checks.push_back(central);

  if (cross_check_truncation > 0) {
    TruncationIndex t2(l, cross_check_truncation);
    const CoverImage cover2 = cover_image(va, t2);
    const TruncatedMatrixGroup tits2 = tits_group(va, cross_check_truncation);
    CheckRecord stable{"truncation-stability", "group/faithful-truncation"};
    stable.record(cover2.group.order() == rep.cover_order,
                  "cover order " + std::to_string(cover2.group.order()) + " at weight <= " +
                      std::to_string(cross_check_truncation));
    stable.record(tits2.group.order() == rep.tits_order, "Tits order " + std::to_string(tits2.group.order()) +
                                                             " at weight <= " + std::to_string(cross_check_truncation));
    rep.checks.push_back(stable);
  }
  return rep;
}

}  // namespace lva
