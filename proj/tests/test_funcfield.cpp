#include <gtest/gtest.h>

#include <random>

#include "ffbsd/funcfield/place.hpp"

using namespace ffbsd;
using namespace ffbsd::funcfield;

namespace {

// Brute-force irreducibility: no monic factor of degree <= deg/2.
bool irreducible_by_trial_division(const Poly& f) {
  const auto& F = f.field();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= F.q();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Poly g(F, ff::dense::monic_from_index(F, d, idx));
      if ((f % g).is_zero()) return false;
    }
  }
  return true;
}

Poly random_poly(const FieldSpec& F, int deg, std::mt19937_64& rng) {
  std::vector<FieldElement> c;
  for (int i = 0; i <= deg; ++i) c.push_back({static_cast<std::uint32_t>(rng() % F.q())});
  if (F.is_zero(c.back())) c.back() = F.one();
  return Poly(F, c);
}

}  // namespace

TEST(Poly, GcdIsMonic) {
  FieldSpec F(5, 1);
  auto a = Poly::from_ints(F, {-1, 0, 1});
  auto b = Poly::from_ints(F, {-1, 1});
  EXPECT_EQ(gcd(a, b), Poly::from_ints(F, {4, 1}));
  EXPECT_EQ(gcd(a.scaled(3), b.scaled(2)), Poly::from_ints(F, {4, 1}));
}

TEST(Poly, DivmodIdentityRandomized) {
  FieldSpec F(7, 1);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto a = random_poly(F, static_cast<int>(rng() % 8), rng);
    auto b = random_poly(F, static_cast<int>(rng() % 4), rng);
    auto [qq, rr] = a.divmod(b);
    EXPECT_EQ(qq * b + rr, a);
    EXPECT_LT(rr.degree(), b.degree() == 0 ? 0 : b.degree());
  }
  EXPECT_THROW(Poly::t(F).divmod(Poly(F)), DivisionByZero);
}

TEST(Poly, FactorReassembles) {
  FieldSpec F(5, 1);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    auto f = random_poly(F, 1 + static_cast<int>(rng() % 9), rng).monic();
    auto fs = f.factor();
    Poly prod = Poly::constant(F, F.one());
    for (auto& [g, m] : fs) {
      EXPECT_TRUE(irreducible_by_trial_division(g));
      EXPECT_TRUE(g.is_monic());
      prod *= g.pow(m);
    }
    EXPECT_EQ(prod, f);
  }
}

TEST(Poly, FactorWithRepeatedAndPthPowerFactors) {
  FieldSpec F(5, 1);
  auto t = Poly::t(F);
  auto one = Poly::constant(F, F.one());
  auto f = (t + one).pow(5) * (t * t + one.scaled(2)).pow(2) * t;
  auto fs = f.factor();
  ASSERT_EQ(fs.size(), 3u);
  EXPECT_EQ(fs[0].first, t);
  EXPECT_EQ(fs[0].second, 1);
  EXPECT_EQ(fs[1].first, t + one);
  EXPECT_EQ(fs[1].second, 5);
  EXPECT_EQ(fs[2].first, t * t + one.scaled(2));
  EXPECT_EQ(fs[2].second, 2);
}

TEST(Poly, RabinAgreesWithTrialDivision) {
  FieldSpec F(7, 1);
  for (int d = 1; d <= 3; ++d) {
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= 7;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Poly f(F, ff::dense::monic_from_index(F, d, idx));
      ASSERT_EQ(f.is_irreducible(), irreducible_by_trial_division(f)) << f.to_string();
      EXPECT_EQ(f.monic_index(), idx);
    }
  }
}

TEST(Places, NecklaceCountsMatchSieve) {
  for (std::uint32_t q : {5u, 7u, 13u}) {
    auto F = FieldSpec::from_order(q);
    for (int d = 1; d <= (q == 13 ? 3 : 4); ++d)
      EXPECT_EQ(places_of_degree(F, d).size(), necklace_count(q, d)) << q << " " << d;
  }
  EXPECT_EQ(necklace_count(5, 5), 624u);
  EXPECT_EQ(necklace_count(7, 4), (2401u - 49u) / 4u);
}

TEST(Places, EnumerationOrderedWithInfinityLast) {
  FieldSpec F(5, 1);
  auto ps = enumerate_places(F, 2);
  ASSERT_EQ(ps.size(), 5u + 10u + 1u);
  EXPECT_TRUE(ps.back().is_infinity());
  EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
  EXPECT_EQ(ps[0].uniformizer(), Poly::t(F));
}

TEST(Places, NonIrreducibleRejected) {
  FieldSpec F(5, 1);
  EXPECT_THROW(Place::finite(Poly::from_ints(F, {-1, 0, 1})), InputError);
  EXPECT_THROW(Place::finite(Poly::from_ints(F, {1, 2})), InputError);
}

TEST(Valuation, BasicExamples) {
  FieldSpec F(5, 1);
  auto t = Poly::t(F);
  auto one = Poly::constant(F, F.one());
  auto pt = Place::finite(t);
  auto inf = Place::infinity(F);
  RationalFunction f(t.pow(3) * (t + one), (t + one.scaled(2)).pow(2));
  EXPECT_EQ(valuation(f, pt), 3);
  EXPECT_EQ(valuation(f, Place::finite(t + one.scaled(2))), -2);
  EXPECT_EQ(valuation(f, inf), -2);
  EXPECT_THROW(valuation(RationalFunction(F), pt), DivisionByZero);
}

TEST(Valuation, ProductFormula) {
  FieldSpec F(5, 1);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto n = random_poly(F, 1 + static_cast<int>(rng() % 5), rng);
    auto d = random_poly(F, static_cast<int>(rng() % 5), rng);
    RationalFunction f(n, d);
    int total = valuation(f, Place::infinity(F));
    for (auto* side : {&f.num(), &f.den()}) {
      for (auto& [g, m] : side->factor()) {
        auto v = Place::finite_unchecked(g);
        total += v.degree() * valuation(f, v);
      }
    }
    EXPECT_EQ(total, 0);
  }
  // t^3 + 2 splits over F_5 as (t+3)(t^2+2t+4)
  auto g = Poly::from_ints(F, {2, 0, 0, 1});
  int total = valuation(g, Place::infinity(F));
  for (auto& [h, m] : g.factor()) total += h.degree() * m;
  EXPECT_EQ(total, 0);
}

TEST(Residue, FiniteAndInfinity) {
  FieldSpec F(5, 1);
  auto t = Poly::t(F);
  auto one = Poly::constant(F, F.one());
  auto v = Place::finite(t + one.scaled(2));  // t = 3
  RationalFunction f(t * t + one, t + one);   // (9+1)/(4) = 10/4 = 0
  EXPECT_EQ(residue(f, v).code, 0u);
  RationalFunction g(t + one, t + one.scaled(2) + one);  // 4/1
  EXPECT_EQ(residue(g, v).code, 4u);
  EXPECT_THROW(residue(RationalFunction(one, t + one.scaled(2)), v), InputError);

  auto inf = Place::infinity(F);
  RationalFunction h(t.scaled(3) + one, t.scaled(2));  // -> 3/2 = 4
  EXPECT_EQ(residue(h, inf).code, 4u);
  EXPECT_EQ(residue(RationalFunction(one, t), inf).code, 0u);
  EXPECT_THROW(residue(RationalFunction(t), inf), InputError);
}

TEST(Residue, DegreeTwoPlaceRootsAreConjugate) {
  FieldSpec F(5, 1);
  auto pi = Poly::from_ints(F, {2, 0, 1});
  auto v = Place::finite(pi);
  auto rm = residue_map(v);
  EXPECT_EQ(rm.field.order(), 25u);
  EXPECT_TRUE(rm.field.is_zero(pi.eval(rm.field, rm.root)));
  // t mod pi squared is -2 = 3
  auto r = residue(RationalFunction(Poly::t(F) * Poly::t(F)), v, rm);
  EXPECT_EQ(r, rm.field.embed({3}));
}

TEST(RationalFunction, FieldOperations) {
  FieldSpec F(7, 1);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    RationalFunction a(random_poly(F, 3, rng), random_poly(F, 2, rng));
    RationalFunction b(random_poly(F, 2, rng), random_poly(F, 3, rng));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ((a * b) / b, a);
    EXPECT_TRUE(a.den().is_monic());
  }
}
