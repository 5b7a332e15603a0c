#include <gtest/gtest.h>

#include "ffbsd/curve/height.hpp"
#include "ffbsd/curve/torsion.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace ffbsd;
using namespace ffbsd::curve;
using funcfield::Poly;
using funcfield::RationalFunction;

namespace {

const auto F = corpus::F5();

RationalFunction poly(std::initializer_list<std::int64_t> c) { return RationalFunction(Poly::from_ints(F, c)); }

KPoint pt(std::initializer_list<std::int64_t> x, std::initializer_list<std::int64_t> y) { return KPoint::affine(poly(x), poly(y)); }

// rank-2 curve y^2 = x^3 + (4t^2 + 3)x + 4 with L = (1 - 5T)^2 (1 + 5T)
Curve R2() { return corpus::make(F, {3, 0, 4}, {4}); }

const HeightOptions kE2Heights{2 * 2 * 2, 12};  // N0 = 2 c(A)^2, c = 2
const HeightOptions kR2Heights{2 * 8 * 8, 12};  // c = 2 * 4

}  // namespace

TEST(Curve, RejectsSingular) {
  EXPECT_THROW(corpus::make(F, {}, {}), InputError);
  // 4a^3 + 27b^2 = 0 with a = -3, b = 2
  EXPECT_THROW(corpus::make(F, {-3}, {2}), InputError);
}

TEST(Curve, Invariants) {
  auto E = corpus::E2();
  EXPECT_EQ(E.c4(), E.a().scaled(-48));
  EXPECT_EQ(E.discriminant(), (E.a().pow(3).scaled(4) + E.b().pow(2).scaled(27)).scaled(-16));
  EXPECT_FALSE(E.is_isotrivial());
  EXPECT_TRUE(corpus::E3().is_isotrivial());
  EXPECT_TRUE(corpus::make(F, {0, 0, 1}, {0, 0, 0, 1}).is_isotrivial());  // a^3/b^2 = 1
  EXPECT_TRUE(corpus::make(F, {1}, {2}).is_constant());
}

TEST(GroupLaw, DoublingOnE2) {
  auto E = corpus::E2();
  auto P = pt({1}, {1});
  ASSERT_TRUE(E.contains(P));
  auto P2 = point_mul(E, 2, P);
  // (t^2 - 6t + 1)/4 over F_5
  EXPECT_EQ(P2.x(), RationalFunction(Poly::from_ints(F, {1, -6, 1}), Poly::from_ints(F, {4})));
  EXPECT_EQ(P2, pt({4, 1, 4}, {2, 0, 2, 2}));
  EXPECT_TRUE(E.contains(P2));
}

TEST(GroupLaw, AbelianGroupAxioms) {
  auto E = corpus::E2();
  auto O = KPoint::identity(F);
  auto P = pt({1}, {1});
  std::vector<KPoint> pts{P, point_mul(E, 2, P), point_mul(E, -3, P), point_mul(E, 5, P)};
  for (const auto& A : pts) {
    EXPECT_TRUE(E.contains(A));
    EXPECT_EQ(point_add(E, A, O), A);
    EXPECT_TRUE(point_add(E, A, point_neg(A)).is_identity());
    for (const auto& B : pts) {
      EXPECT_EQ(point_add(E, A, B), point_add(E, B, A));
      for (const auto& C : pts) EXPECT_EQ(point_add(E, point_add(E, A, B), C), point_add(E, A, point_add(E, B, C)));
    }
  }
  EXPECT_EQ(point_mul(E, 7, P), point_add(E, point_mul(E, 3, P), point_mul(E, 4, P)));
  EXPECT_EQ(point_sub(E, point_mul(E, 5, P), P), point_mul(E, 4, P));
}

TEST(GroupLaw, TwoTorsionOnE3) {
  auto E = corpus::E3();
  auto T = pt({0}, {});
  ASSERT_TRUE(E.contains(T));
  EXPECT_TRUE(point_mul(E, 2, T).is_identity());
  EXPECT_EQ(point_order(E, T, 10), 2);
}

TEST(Height, E2GeneratorIsOneHalf) {
  auto E = corpus::E2();
  auto P = pt({1}, {1});
  EXPECT_EQ(naive_height(P), 0);
  EXPECT_EQ(canonical_height(E, P, kE2Heights), Rational(1, 2));
  EXPECT_EQ(canonical_height(E, point_mul(E, 2, P), kE2Heights), Rational(2));
  EXPECT_EQ(canonical_height(E, point_neg(P), kE2Heights), canonical_height(E, P, kE2Heights));
}

TEST(Height, QuadraticInMultiples) {
  auto E = corpus::E2();
  auto P = pt({1}, {1});
  const Rational h = canonical_height(E, P, kE2Heights);
  for (int m = 1; m <= 4; ++m) EXPECT_EQ(canonical_height(E, point_mul(E, m, P), kE2Heights), h * m * m) << m;
}

TEST(Height, ParallelogramLaw) {
  auto E = corpus::E2();
  auto P = pt({1}, {1});
  auto Q = point_mul(E, 2, P);
  auto h = [&](const KPoint& X) { return canonical_height(E, X, kE2Heights); };
  EXPECT_EQ(h(point_add(E, P, Q)) + h(point_sub(E, P, Q)), 2 * h(P) + 2 * h(Q));

  auto R = R2();
  auto A = pt({0}, {3}), B = pt({3, 1}, {0, 4});
  auto hr = [&](const KPoint& X) { return canonical_height(R, X, kR2Heights); };
  EXPECT_EQ(hr(point_add(R, A, B)) + hr(point_sub(R, A, B)), 2 * hr(A) + 2 * hr(B));
}

TEST(Height, TorsionHasHeightZero) {
  auto E = corpus::E3();
  EXPECT_EQ(canonical_height(E, pt({0}, {}), {2 * 4 * 4, 12}), Rational(0));
}

TEST(Height, DoublingCapRaises) {
  auto E = corpus::E2();
  EXPECT_THROW(canonical_height(E, pt({1}, {1}), {8, 1}), HeightError);
}

TEST(Regulator, UnimodularInvariance) {
  auto E = corpus::E2();
  auto P = pt({1}, {1});
  EXPECT_EQ(height_pairing(E, {P}, kE2Heights).determinant(), Rational(1, 2));
  EXPECT_EQ(height_pairing(E, {point_neg(P)}, kE2Heights).determinant(), Rational(1, 2));

  auto R = R2();
  auto A = pt({0}, {3}), B = pt({3, 1}, {0, 4});
  const Rational det = height_pairing(R, {A, B}, kR2Heights).determinant();
  EXPECT_EQ(det, Rational(1, 4));
  // [[1,1],[0,1]], [[2,1],[1,1]], [[0,1],[-1,0]]
  EXPECT_EQ(height_pairing(R, {point_add(R, A, B), B}, kR2Heights).determinant(), det);
  EXPECT_EQ(height_pairing(R, {point_add(R, point_mul(R, 2, A), B), point_add(R, A, B)}, kR2Heights).determinant(), det);
  EXPECT_EQ(height_pairing(R, {B, point_neg(A)}, kR2Heights).determinant(), det);
  // index-2 sublattice: determinant times 4
  EXPECT_EQ(height_pairing(R, {point_mul(R, 2, A), B}, kR2Heights).determinant(), det * 4);
}

TEST(Regulator, PairingIsSymmetricPositiveDefinite) {
  auto R = R2();
  auto M = height_pairing(R, {pt({0}, {3}), pt({3, 1}, {0, 4})}, kR2Heights);
  EXPECT_EQ(M.entries[0][1], M.entries[1][0]);
  EXPECT_TRUE(M.positive_definite());
  EXPECT_EQ(M.leading_minors().size(), 2u);
  EXPECT_THROW(height_pairing(R, {pt({1}, {1})}, kR2Heights), InputError);
}

TEST(Determinant, SmallMatrices) {
  Matrix m{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
  EXPECT_EQ(determinant(m), Rational(1));
  Matrix z{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  EXPECT_EQ(determinant(z), Rational(-1));
}

TEST(Torsion, BoundsOnCorpus) {
  EXPECT_EQ(torsion_bound(corpus::E1(), small_good_places(corpus::E1())), 1);
  EXPECT_EQ(torsion_bound(corpus::E3(), small_good_places(corpus::E3())), 2);
  EXPECT_THROW(torsion_bound(corpus::E1(), {funcfield::Place::infinity(F)}), InputError);
}

TEST(Torsion, SearchFindsTheTwoTorsionPoint) {
  auto ts = find_torsion(corpus::E3(), 1);
  ASSERT_TRUE(ts.complete);
  EXPECT_EQ(ts.order, 2);
  ASSERT_EQ(ts.points.size(), 1u);
  EXPECT_EQ(ts.points[0], pt({0}, {}));
  EXPECT_EQ(generated_subgroup_order(corpus::E3(), ts.points, 12), 2);
}

TEST(Torsion, NonMinimalModelMapsBack) {
  // E3 scaled by u = t + 1: the 2-torsion point stays (0, 0)
  auto u = Poly::from_ints(F, {1, 1});
  Curve G(corpus::E3().a() * u.pow(4), corpus::E3().b());
  auto ts = find_torsion(G, 1);
  ASSERT_TRUE(ts.complete);
  EXPECT_EQ(ts.order, 2);
  EXPECT_TRUE(G.contains(ts.points.at(0)));
}

TEST(Torsion, PolySqrt) {
  std::vector<std::int64_t> sq(5, -1);
  for (std::uint32_t x = 0; x < 5; ++x) sq[F.mul({x}, {x}).code] = x;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    auto g = oracle::random_poly(F, 4, rng);
    auto r = detail::poly_sqrt(g * g, sq);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r * *r, g * g);
  }
  EXPECT_FALSE(detail::poly_sqrt(Poly::from_ints(F, {0, 1}), sq));
  EXPECT_FALSE(detail::poly_sqrt(Poly::from_ints(F, {2}), sq));
}
