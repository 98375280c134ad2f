#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "lva/check.hpp"
#include "lva/coefficients.hpp"
#include "lva/cover.hpp"
#include "lva/fock.hpp"
#include "lva/lattice.hpp"

namespace lva {

struct FockStateHash {
  std::size_t operator()(const FockState& s) const {
    std::size_t h = LatticeVectorHash{}(s.lattice_point);
    for (const auto& m : s.modes) h = h * 1000003u ^ static_cast<std::size_t>(m.depth * 131 + m.index);
    return h;
  }
};

/// V_L over Q with the sign cocycle of the fixed basis. Mode products of
/// basis states are memoized; the object is safe to share between threads.
class LatticeVertexAlgebra {
 public:
  explicit LatticeVertexAlgebra(Lattice l);

  const Lattice& lattice() const { return lattice_; }
  const Cocycle& cocycle() const { return *eps_; }
  const std::shared_ptr<const Cocycle>& cocycle_ptr() const { return eps_; }

  FockVector vacuum() const { return lva::vacuum(lattice_); }
  FockVector lattice_vector(const LatticeVector& lambda) const { return lva::lattice_vector(lambda); }
  /// b(-1) applied to the vacuum.
  FockVector heisenberg_vector(const std::vector<Rational>& b) const;

  /// u_n v, extended bilinearly.
  FockVector mode(const FockVector& u, long long n, const FockVector& v) const;
  FockVector mode(const FockState& u, long long n, const FockState& v) const;

  /// T^{(m)} u = u_{-m-1} 1.
  FockVector translation(const FockVector& u, long long m) const;

  std::size_t cache_size() const;
  void clear_cache() const;

 private:
  FockVector compute_mode(const FockState& u, long long n, const FockState& v) const;

  struct Key {
    FockState u;
    long long n;
    FockState v;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      FockStateHash h;
      return h(k.u) * 31 + h(k.v) * 1000003u + static_cast<std::size_t>(k.n);
    }
  };

  Lattice lattice_;
  std::shared_ptr<const Cocycle> eps_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Key, FockVector, KeyHash> cache_;
};

/// Largest weight among the terms of v (0 for the zero vector).
long long max_weight(const Lattice& l, const FockVector& v);

struct IdentityResult {
  std::string name;
  bool holds = false;
  /// lhs - rhs.
  FockVector residual;
};

/// sum_i C(r,i) (u_{t+i} v)_{r+s-i} w  =
///   sum_i (-1)^i C(t,i) [u_{r+t-i} v_{s+i} w - (-1)^t v_{s+t-i} u_{r+i} w].
IdentityResult borcherds_check(const LatticeVertexAlgebra& va, const FockVector& u, const FockVector& v,
                               const FockVector& w, long long r, long long s, long long t);

/// [u_m, v_n] w = sum_k C(m,k) (u_k v)_{m+n-k} w.
IdentityResult commutator_check(const LatticeVertexAlgebra& va, const FockVector& u, const FockVector& v,
                                const FockVector& w, long long m, long long n);

/// v_n u = (-1)^{n+1} sum_i (-1)^i T^{(i)}(u_{n+i} v).
IdentityResult skew_symmetry_check(const LatticeVertexAlgebra& va, const FockVector& u, const FockVector& v,
                                   long long n);

/// (u_m v)_n w = sum_i (-1)^i C(m,i) [u_{m-i} v_{n+i} w - (-1)^m v_{m+n-i} u_i w].
IdentityResult associativity_check(const LatticeVertexAlgebra& va, const FockVector& u, const FockVector& v,
                                   const FockVector& w, long long m, long long n);

/// Commutator, skew-symmetry and associativity for (u, v) with the given
/// mode indices, using w for the three-vector identities.
std::vector<IdentityResult> auxiliary_identity_checks(const LatticeVertexAlgebra& va, const FockVector& u,
                                                      const FockVector& v, const FockVector& w, long long m,
                                                      long long n);

struct ConformalResult {
  bool ok = false;
  /// omega over Q (always computed, even when refused over the ring).
  FockVector omega;
  Rational half_charge;
  /// Images in the ring when ok.
  std::map<FockState, RingElement> omega_in_ring;
  std::optional<RingElement> half_charge_in_ring;
  Integer determinant;
  bool determinant_is_unit = false;
  /// Entries of the criterion that fail over the ring.
  std::vector<std::string> failures;
  std::string reason;
};

/// omega = sum_{i,j} (G^{-1})_{ij}/2 alpha_i(-1) alpha_j(-1) 1 with c = rank/2,
/// provided det L is a unit in the ring; otherwise a structured refusal.
ConformalResult conformal_vector(const Lattice& l, const Ring& ring);

struct VirasoroReport {
  CheckRecord bracket{"virasoro-bracket", "vertex-algebra/virasoro-relations"};
  CheckRecord l0_weight{"l0-eigenvalue", "vertex-algebra/l0-grading"};
  CheckRecord l_minus1_translation{"l-1-translation", "vertex-algebra/l-1-translation"};
  CheckRecord heisenberg_bracket{"heisenberg-virasoro-bracket", "automorphism/homogeneous-weight-one"};
  bool refused = false;
  std::string refusal;

  bool passed() const {
    return !refused && bracket.passed() && l0_weight.passed() && l_minus1_translation.passed() &&
           heisenberg_bracket.passed();
  }
};

/// Virasoro relations for |m|,|n| <= max_mode on every basis vector of weight
/// <= max_weight, L_0 = weight, L_{-1} u = u_{-2} 1, and [h_m, L_n] = m h_{m+n}
/// for the basis of L. Identities are evaluated over Q; the ring only gates
/// existence of the conformal vector.
VirasoroReport virasoro_check(const LatticeVertexAlgebra& va, const Ring& ring, long long max_mode,
                              long long max_weight, std::size_t threads = 0);

/// Settings for the axiom suites. samples == 0 means exhaustive.
struct AxiomSuiteConfig {
  long long max_weight = 3;
  long long max_mode = 2;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct AxiomSuiteReport {
  CheckRecord vacuum{"vacuum", "vertex-algebra/vacuum-axiom"};
  CheckRecord creation{"creation", "vertex-algebra/creation-axiom"};
  CheckRecord grading{"grading", "vertex-algebra/grading"};
  CheckRecord borcherds{"borcherds", "vertex-algebra/borcherds-identity"};
  CheckRecord commutator{"commutator", "vertex-algebra/commutator-formula"};
  CheckRecord skew_symmetry{"skew-symmetry", "vertex-algebra/skew-symmetry"};
  CheckRecord associativity{"associativity", "vertex-algebra/associativity"};

  std::vector<const CheckRecord*> records() const {
    return {&vacuum, &creation, &grading, &borcherds, &commutator, &skew_symmetry, &associativity};
  }
  bool passed() const {
    for (auto* r : records())
      if (!r->passed()) return false;
    return true;
  }
};

/// Runs every axiom family on monomial basis vectors of weight <= max_weight
/// and mode indices in [-max_mode, max_mode]; exhaustive when samples == 0,
/// otherwise `samples` seeded draws per three-vector family.
AxiomSuiteReport axiom_suite(const LatticeVertexAlgebra& va, const AxiomSuiteConfig& cfg);

/// Mode products u_n v of Z-form spanning vectors u, v of weight <= max_weight,
/// n in [-max_mode, wt u + wt v - 1], stay in the Z-form (integral_membership
/// on every bidegree component). samples == 0 means exhaustive.
CheckRecord zform_closure_check(const LatticeVertexAlgebra& va, long long max_weight, long long max_mode,
                                std::size_t samples, std::uint64_t seed);

/// Every Z-form spanning vector of weight <= max_weight, grouped by bidegree.
std::vector<FockVector> zform_generators(const Lattice& l, long long max_weight);

std::size_t resolve_threads(std::size_t requested);

}  // namespace lva
