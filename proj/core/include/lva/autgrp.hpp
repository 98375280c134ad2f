#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lva/check.hpp"
#include "lva/cover.hpp"
#include "lva/fock.hpp"
#include "lva/lattice.hpp"
#include "lva/matrix_group.hpp"
#include "lva/vertex.hpp"

namespace lva {

/// g in Hom(L, Q^x), given by its values on the basis.
struct TorusCharacter {
  std::vector<Rational> values_on_basis;

  Rational operator()(const LatticeVector& lambda) const;
};

/// exp(r (iota(e_alpha))_0) for a root alpha.
struct RootGroupElement {
  LatticeVector root;
  Rational param;
};

/// Negative control: (h, eta) with eta extended as a plain homomorphism,
/// dropping the cocycle correction. Not an automorphism whenever
/// eps(ha, hb) != eps(a, b) for some a, b.
struct UncorrectedCover {
  IntMatrix h;
  std::vector<int> eta_signs;
};

/// A composite of the constructed automorphism families. Factors are listed
/// left to right as in the product, so the last factor acts first.
struct AutAction {
  using Factor = std::variant<TorusCharacter, RootGroupElement, CoverAutomorphism, UncorrectedCover>;
  std::vector<Factor> factors;
  std::string label;

  static AutAction torus(TorusCharacter g, std::string label = "torus");
  static AutAction root_exp(RootGroupElement e, std::string label = "root-exp");
  static AutAction cover(CoverAutomorphism phi, std::string label = "cover");
  static AutAction uncorrected(UncorrectedCover c, std::string label = "uncorrected-cover");
  static AutAction identity() { return {{}, "identity"}; }

  /// this * other (other acts first).
  AutAction then_after(const AutAction& other) const;
};

FockVector apply_torus(const TorusCharacter& g, const FockVector& v);
FockVector apply_root_exp(const LatticeVertexAlgebra& va, const RootGroupElement& e, const FockVector& v);
FockVector apply_cover(const Lattice& l, const CoverAutomorphism& phi, const FockVector& v);
FockVector apply_uncorrected(const Lattice& l, const UncorrectedCover& c, const FockVector& v);
FockVector apply_action(const LatticeVertexAlgebra& va, const AutAction& a, const FockVector& v);

/// Checks phi(1) = 1, weight preservation on the basis of weight <= max_weight,
/// and phi(u_n v) = phi(u)_n phi(v) for basis u, v and n in
/// [-max_mode, wt u + wt v - 1]; exhaustive when samples == 0, otherwise
/// `samples` seeded draws.
CheckRecord is_vertex_automorphism(const LatticeVertexAlgebra& va, const AutAction& a, long long max_weight,
                                   std::size_t samples, std::uint64_t seed, long long max_mode = 2);

using RationalMatrixGroup = MatrixGroup<Rational>;

/// Matrix of the action on truncation_basis(l, N); column j is the image of
/// basis vector j.
RationalMatrix matrix_on_truncation(const LatticeVertexAlgebra& va, const AutAction& a, long long N);

/// Scalar c with (e_alpha)_1 e_{-alpha} = c 1; throws DomainError if the
/// product is not a nonzero multiple of the vacuum.
Rational dual_root_normalization(const LatticeVertexAlgebra& va, const LatticeVector& alpha);

/// n_alpha = exp((e_alpha)_0) exp(-(e'_{-alpha})_0) exp((e_alpha)_0) with
/// e'_{-alpha} = e_{-alpha} / c normalized so that (e_alpha)_1 e'_{-alpha} = 1.
AutAction tits_element(const LatticeVertexAlgebra& va, const LatticeVector& alpha);

/// lambda -> (-1)^{<alpha, lambda>}.
TorusCharacter coroot_sign_character(const Lattice& l, const LatticeVector& alpha);

struct TruncatedMatrixGroup {
  long long truncation_weight = 0;
  std::vector<FockState> basis;
  RationalMatrixGroup group;
};

/// Closure of the n_alpha (alpha in Phi) and the characters Hom(L, {+-1}).
TruncatedMatrixGroup tits_group(const LatticeVertexAlgebra& va, long long N, std::size_t cap = default_group_cap());

struct TitsRelationsReport {
  CheckRecord square{"tits-square", "group/tits-square-is-coroot-sign"};
  CheckRecord conjugation{"tits-torus-conjugation", "group/tits-conjugation-is-reflection"};
  CheckRecord sector_map{"tits-sector-map", "group/tits-maps-sectors-by-reflection"};
  bool passed() const { return square.passed() && conjugation.passed() && sector_map.passed(); }
};

/// n_alpha^2 = coroot sign character and n_alpha g n_alpha^{-1} = g o s_alpha
/// for every root and `samples` seeded torus characters.
TitsRelationsReport tits_relations(const LatticeVertexAlgebra& va, long long N, std::size_t samples,
                                   std::uint64_t seed);

/// alpha_0^n v / n! lies in the Z-form for every root alpha, 1 <= n <= max_n
/// and every Z-form spanning vector v of weight <= max_weight, where
/// alpha_0 = (iota(e_alpha))_0.
CheckRecord divided_power_check(const LatticeVertexAlgebra& va, long long max_weight, long long max_n);

/// Some h in O(L) whose cocycle correction eps(ha, hb) eps(a, b) is
/// nontrivial, if one exists; used to build the negative control.
std::optional<IntMatrix> find_twisting_isometry(const Lattice& l);

struct MainTheoremReport {
  std::string lattice;
  long long truncation = 1;
  long long cross_check_truncation = 0;
  std::string cartan_type;
  std::size_t truncation_dimension = 0;
  std::size_t roots = 0;
  std::size_t weyl_order = 0;
  std::size_t orthogonal_order = 0;
  std::size_t outer_classes = 0;
  std::size_t cover_order = 0;
  std::size_t cover_kernel_order = 0;
  std::size_t tits_order = 0;
  std::size_t weyl_preimage_order = 0;
  std::size_t quotient_order = 0;
  std::vector<CheckRecord> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

/// Realizes the cover group O(L~)(Q), the Tits group and the torus on the
/// weight <= N truncation and verifies the decomposition identities (order
/// of the cover image, normalization of the torus, Tits group = preimage of
/// W, quotient order = |O|/|W|, centralizer of the torus). If
/// cross_check_truncation > 0 the orders are recomputed there and compared.
MainTheoremReport main_theorem_report(const LatticeVertexAlgebra& va, long long N, long long cross_check_truncation,
                                      std::size_t samples, std::uint64_t seed);

}  // namespace lva
