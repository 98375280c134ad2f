#include <gtest/gtest.h>

#include "lva/errors.hpp"
#include "lva/lattice.hpp"
#include "oracles.hpp"

using namespace lva;

TEST(Lattice, PresetsAndDeterminants) {
  EXPECT_EQ(Lattice::preset("A1").gram(), (IntMatrix{{2}}));
  EXPECT_EQ(Lattice::preset("A2").determinant(), 3);
  EXPECT_EQ(Lattice::preset("A1A1").determinant(), 4);
  EXPECT_EQ(Lattice::preset("D4").determinant(), 4);
  EXPECT_EQ(Lattice::preset("E8").determinant(), 1);
  EXPECT_THROW(Lattice::preset("B2"), InputError);
}

TEST(Lattice, RejectsInvalidGramMatrices) {
  EXPECT_THROW(Lattice("odd", IntMatrix{{1}}), InputError);
  EXPECT_THROW(Lattice("indefinite", IntMatrix{{2, 3}, {3, 2}}), InputError);
  EXPECT_THROW(Lattice("asym", IntMatrix{{2, 1}, {0, 2}}), InputError);
  EXPECT_THROW(Lattice("zero", IntMatrix{{0}}), InputError);

  const auto v = gram_violation(IntMatrix{{2, 3}, {3, 2}});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->row, 1u);
  EXPECT_NE(v->message.find("-5"), std::string::npos);
  const auto odd = gram_violation(IntMatrix{{2, 0}, {0, 3}});
  ASSERT_TRUE(odd.has_value());
  EXPECT_EQ(odd->row, 1u);
  EXPECT_NE(odd->message.find("not even"), std::string::npos);
}

TEST(Lattice, InnerProductChecksDimensions) {
  const Lattice l = Lattice::preset("A2");
  EXPECT_EQ(l.inner(LatticeVector{1, 0}, LatticeVector{0, 1}), -1);
  EXPECT_THROW(l.inner(LatticeVector{1}, LatticeVector{1, 0}), DomainError);
}

TEST(ShortVectors, MatchBoxSearch) {
  for (const char* name : {"A1", "A2", "A1A1", "D4"}) {
    const Lattice l = Lattice::preset(name);
    for (long long bound : {2, 4, 6}) EXPECT_EQ(short_vectors(l, bound), oracle::short_vectors(l, bound)) << name;
  }
}

TEST(Roots, CountsForPresets) {
  EXPECT_EQ(roots(Lattice::preset("A1")).size(), 2u);
  EXPECT_EQ(roots(Lattice::preset("A2")).size(), 6u);
  EXPECT_EQ(roots(Lattice::preset("A1A1")).size(), 4u);
  EXPECT_EQ(roots(Lattice::preset("D4")).size(), 24u);
  EXPECT_EQ(roots(Lattice::preset("E8")).size(), 240u);
}

TEST(Roots, ReflectionsAreInvolutiveIsometries) {
  for (const char* name : {"A2", "D4"}) {
    const Lattice l = Lattice::preset(name);
    for (const auto& a : roots(l)) {
      const IntMatrix s = reflection(l, a);
      EXPECT_TRUE(l.preserves_form(s));
      EXPECT_TRUE((s * s).is_identity());
      EXPECT_EQ(apply(s, a), -a);
    }
    EXPECT_THROW(reflection(l, l.zero()), DomainError);
  }
}

TEST(Roots, SimpleSystemDecomposesPositiveRoots) {
  const Lattice l = Lattice::preset("D4");
  const auto simple = simple_roots(l);
  ASSERT_EQ(simple.size(), 4u);
  // every positive root is a non-negative integer combination of simple roots:
  // the simple roots form a basis, so solve and check signs
  IntMatrix s(4, 4);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) s(i, j) = simple[j][i];
  const RationalMatrix inv = inverse(to_rational(s));
  for (const auto& a : roots(l)) {
    if (!is_positive(a)) continue;
    for (std::size_t i = 0; i < 4; ++i) {
      Rational c = 0;
      for (std::size_t j = 0; j < 4; ++j) c += inv(i, j) * static_cast<long>(a[j]);
      EXPECT_EQ(c.get_den(), 1);
      EXPECT_GE(c, 0);
    }
  }
}

TEST(CartanType, Classification) {
  auto type = [](const char* n) {
    std::string s;
    for (const auto& c : cartan_type(Lattice::preset(n))) s += c.str() + " ";
    return s;
  };
  EXPECT_EQ(type("A1"), "A1 ");
  EXPECT_EQ(type("A2"), "A2 ");
  EXPECT_EQ(type("A1A1"), "A1 A1 ");
  EXPECT_EQ(type("D4"), "D4 ");
  EXPECT_EQ(type("E8"), "E8 ");
  EXPECT_EQ(weyl_order_from_type(cartan_type(Lattice::preset("E8"))), 696729600);
}

TEST(WeylGroup, OrdersByClosure) {
  EXPECT_EQ(weyl_group(Lattice::preset("A1")).order(), 2u);
  EXPECT_EQ(weyl_group(Lattice::preset("A2")).order(), 6u);
  EXPECT_EQ(weyl_group(Lattice::preset("A1A1")).order(), 4u);
  EXPECT_EQ(weyl_group(Lattice::preset("D4")).order(), 192u);
}

TEST(WeylGroup, CapIsEnforcedBeforeClosure) {
  EXPECT_THROW(weyl_group(Lattice::preset("E8")), ResourceCapExceeded);
  EXPECT_THROW(weyl_group(Lattice::preset("D4"), 100), ResourceCapExceeded);
}

TEST(OrthogonalGroup, MatchesBoxSearch) {
  for (const char* name : {"A1", "A2", "A1A1", "D4"}) {
    const Lattice l = Lattice::preset(name);
    const auto o = orthogonal_group(l);
    EXPECT_EQ(o.order(), oracle::orthogonal_order(l)) << name;
    for (const auto& h : o.elements()) EXPECT_TRUE(l.preserves_form(h));
  }
  EXPECT_EQ(orthogonal_group(Lattice::preset("A2")).order(), 12u);
}

TEST(OrthogonalGroup, OuterClasses) {
  const std::pair<const char*, std::size_t> expected[] = {{"A1", 1}, {"A2", 2}, {"A1A1", 2}, {"D4", 6}};
  for (const auto& [name, n] : expected) {
    const Lattice l = Lattice::preset(name);
    const auto w = weyl_group(l);
    const auto o = orthogonal_group(l);
    EXPECT_EQ(outer_classes(w, o).size(), n) << name;
    for (const auto& g : w.elements()) EXPECT_TRUE(o.contains(g));
  }
}

TEST(RootDatum, InvariantsForPresets) {
  for (const char* name : {"A1", "A2", "A1A1", "D4"}) {
    const Lattice l = Lattice::preset(name);
    const RootDatum rd = root_datum(l);
    EXPECT_TRUE(rd.semisimple) << name;
    EXPECT_TRUE(rd.reduced) << name;
    EXPECT_EQ(rd.root_span_rank, l.rank());
    ASSERT_EQ(rd.roots.size(), rd.coroots.size());
    for (std::size_t i = 0; i < rd.roots.size(); ++i) EXPECT_EQ(rd.pairing(rd.roots[i], rd.coroots[i]), 2);
  }
}
