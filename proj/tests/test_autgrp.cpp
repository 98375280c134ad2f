#include <gtest/gtest.h>

#include "lva/autgrp.hpp"
#include "lva/errors.hpp"
#include "oracles.hpp"

using namespace lva;

TEST(Actions, TorusScalesSectors) {
  const LatticeVertexAlgebra va(Lattice::preset("A2"));
  const TorusCharacter g{{make_rational(2), make_rational(1, 3)}};
  EXPECT_EQ(g({1, -2}), make_rational(18));
  const FockVector v(FockState(LatticeVector{1, 1}, {{1, 0}}));
  EXPECT_EQ(apply_torus(g, v), make_rational(2, 3) * v);
}

TEST(Actions, ThenAfterOrder) {
  const LatticeVertexAlgebra va(Lattice::preset("A1"));
  const auto a = AutAction::torus(TorusCharacter{{make_rational(2)}});
  const auto b = AutAction::root_exp(RootGroupElement{{1}, make_rational(1)});
  const FockVector v = va.lattice_vector({-1});
  EXPECT_EQ(apply_action(va, a.then_after(b), v), apply_action(va, a, apply_action(va, b, v)));
}

TEST(Actions, RootExponentialRejectsNonRoots) {
  const LatticeVertexAlgebra va(Lattice::preset("A1"));
  EXPECT_THROW(apply_root_exp(va, RootGroupElement{{2}, make_rational(1)}, va.vacuum()), DomainError);
}

TEST(Automorphism, ConstructedFamiliesPassA1) {
  const Lattice l = Lattice::preset("A1");
  const LatticeVertexAlgebra va(l);
  const Ring q = Ring::rationals();
  std::vector<AutAction> actions{
      AutAction::torus(TorusCharacter{{make_rational(-3, 5)}}),
      AutAction::root_exp(RootGroupElement{{1}, make_rational(2)}),
      AutAction::root_exp(RootGroupElement{{-1}, make_rational(-1, 2)}),
  };
  const auto o = orthogonal_group(l);
  for (const auto& h : o.elements())
    for (const auto& e : q.mu2_elements()) actions.push_back(AutAction::cover(lift_orthogonal(q, va.cocycle_ptr(), h, {e})));
  for (const auto& a : actions) {
    const auto rec = is_vertex_automorphism(va, a, 1, 0, 0);
    EXPECT_TRUE(rec.passed()) << a.label << ": " << rec.counterexample;
  }
}

TEST(Automorphism, UncorrectedLiftFailsOnA2Swap) {
  const Lattice l = Lattice::preset("A2");
  const LatticeVertexAlgebra va(l);
  const IntMatrix swap{{0, 1}, {1, 0}};
  ASSERT_TRUE(l.preserves_form(swap));
  const auto bad = is_vertex_automorphism(va, AutAction::uncorrected(UncorrectedCover{swap, {1, 1}}), 1, 0, 0);
  EXPECT_FALSE(bad.passed());
  EXPECT_FALSE(bad.counterexample.empty());
  const Ring q = Ring::rationals();
  const auto good = is_vertex_automorphism(
      va, AutAction::cover(lift_orthogonal(q, va.cocycle_ptr(), swap, {q.one(), q.one()})), 1, 0, 0);
  EXPECT_TRUE(good.passed()) << good.counterexample;
  EXPECT_TRUE(find_twisting_isometry(l).has_value());
  EXPECT_FALSE(find_twisting_isometry(Lattice::preset("A1")).has_value());
}

TEST(Tits, NormalizationMatchesCocycle) {
  for (const char* name : {"A1", "A2"}) {
    const Lattice l = Lattice::preset(name);
    const LatticeVertexAlgebra va(l);
    for (const auto& a : roots(l)) {
      const LatticeVector minus = -a;
      EXPECT_EQ(dual_root_normalization(va, a), Rational(oracle::cocycle_sign(l.gram(), a.coords, minus.coords)));
    }
  }
}

TEST(Tits, SquareIsCorootSign) {
  const Lattice l = Lattice::preset("A2");
  const LatticeVertexAlgebra va(l);
  for (const auto& a : roots(l)) {
    const RationalMatrix n = matrix_on_truncation(va, tits_element(va, a), 1);
    const RationalMatrix s = matrix_on_truncation(va, AutAction::torus(coroot_sign_character(l, a)), 1);
    EXPECT_EQ(n * n, s) << a.str();
  }
}

TEST(Tits, GroupOrders) {
  const std::pair<const char*, std::size_t> expected[] = {{"A1", 4}, {"A2", 24}, {"A1A1", 16}};
  for (const auto& [name, order] : expected) {
    const LatticeVertexAlgebra va(Lattice::preset(name));
    EXPECT_EQ(tits_group(va, 1).group.order(), order) << name;
  }
}

TEST(Tits, RelationsA1) {
  const LatticeVertexAlgebra va(Lattice::preset("A1"));
  const auto rep = tits_relations(va, 1, 4, 5);
  EXPECT_TRUE(rep.passed()) << rep.square.counterexample << rep.conjugation.counterexample;
}

TEST(MainReport, A1AllChecksPass) {
  const LatticeVertexAlgebra va(Lattice::preset("A1"));
  const auto rep = main_theorem_report(va, 1, 2, 4, 0);
  EXPECT_EQ(rep.cover_order, 4u);
  EXPECT_EQ(rep.tits_order, 4u);
  EXPECT_EQ(rep.quotient_order, 1u);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed()) << c.name << ": " << c.counterexample;
}

TEST(IntegralForm, DividedPowersA1) {
  const LatticeVertexAlgebra va(Lattice::preset("A1"));
  const auto rec = divided_power_check(va, 2, 3);
  EXPECT_TRUE(rec.passed()) << rec.counterexample;
  EXPECT_GT(rec.instances, 0u);
}
