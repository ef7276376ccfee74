#include "oracles.hpp"

#include "sinnott/cyclotomic.hpp"
#include "sinnott/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sinnott;

namespace {

// Element of Z[zeta_m] from an oracle polynomial (reduced by the oracle's Phi_m).
CycloElt from_poly(u64 m, const oracle::Poly& p)
{
  const auto r = oracle::rem(p, oracle::cyclotomic(m));
  std::vector<mpz_class> c;
  for (i64 v : r)
    c.emplace_back(static_cast<long>(v));
  return CycloElt::from_coefficients(m, c);
}

CycloElt random_elt(u64 m, std::mt19937_64& rng)
{
  std::vector<mpz_class> c(euler_phi(m));
  for (auto& x : c)
    x = static_cast<long>(rng() % 11) - 5;
  return CycloElt::from_coefficients(m, c);
}

} // namespace

TEST(CyclotomicPolynomial, MatchesOracle)
{
  for (u64 m = 1; m <= 120; ++m) {
    const auto expect = oracle::cyclotomic(m);
    const auto& got = cyclotomic_polynomial(m);
    ASSERT_EQ(got.size(), expect.size()) << m;
    for (std::size_t i = 0; i < got.size(); ++i)
      ASSERT_EQ(got[i], expect[i]) << m;
  }
}

TEST(CyclotomicPolynomial, ValueAtOne)
{
  for (u64 m = 2; m <= 200; ++m) {
    i64 v = 0;
    for (i64 c : cyclotomic_polynomial(m))
      v += c;
    const auto f = factorize(m);
    if (f.size() == 1)
      EXPECT_EQ(v, static_cast<i64>(f[0].first)) << m;
    else
      EXPECT_EQ(v, 1) << m;
  }
}

TEST(GaloisApply, Basics)
{
  std::mt19937_64 rng(1);
  const CycloElt x = random_elt(15, rng);
  EXPECT_EQ(galois_apply(1, x), x);
  EXPECT_EQ(galois_apply(2, CycloElt::one_minus_zeta(5, 1)), CycloElt::one_minus_zeta(5, 2));
  EXPECT_THROW(galois_apply(3, x), InvalidArgument);
  EXPECT_THROW(galois_apply(5, x), InvalidArgument);
}

TEST(GaloisApply, GroupActionAndAutomorphism)
{
  std::mt19937_64 rng(2);
  const u64 m = 15;
  for (int trial = 0; trial < 20; ++trial) {
    const CycloElt x = random_elt(m, rng), y = random_elt(m, rng);
    for (i64 a : {1, 2, 4, 7, 8, 11, 13, 14})
      for (i64 b : {2, 7, 11}) {
        EXPECT_EQ(galois_apply(a, galois_apply(b, x)), galois_apply(a * b % m, x));
      }
    EXPECT_EQ(galois_apply(7, x * y), galois_apply(7, x) * galois_apply(7, y));
    EXPECT_EQ(galois_apply(7, x + y), galois_apply(7, x) + galois_apply(7, y));
  }
}

TEST(RelativeNorm, Examples)
{
  const CycloElt x = CycloElt::one_minus_zeta(15, 1);
  EXPECT_EQ(relative_norm(x, {}), x);
  EXPECT_EQ(relative_norm(x, {1}), x);
  for (u64 q : {3, 5, 7, 11, 13}) {
    std::vector<u64> all;
    for (u64 a = 1; a < q; ++a)
      all.push_back(a);
    EXPECT_EQ(relative_norm(CycloElt::one_minus_zeta(q, 1), all),
              CycloElt::integer(q, static_cast<unsigned long>(q)));
  }
  // (1 - x)(1 - x^11) reduced by Phi_15.
  const auto expect = from_poly(15, oracle::mul(oracle::one_minus_x(1), oracle::one_minus_x(11)));
  EXPECT_EQ(relative_norm(x, {11}), expect);
}

TEST(RelativeNorm, InvariantAndTransitive)
{
  std::mt19937_64 rng(3);
  const u64 m = 21;
  for (int trial = 0; trial < 10; ++trial) {
    const CycloElt x = random_elt(m, rng);
    const CycloElt n = relative_norm(x, {4});
    for (u64 a : unit_subgroup(m, {4}))
      EXPECT_EQ(galois_apply(static_cast<i64>(a), n), n);
    // {1,4,16} <= <2> = {1,2,4,8,11,16}, coset representatives {1, 2}.
    const CycloElt step = n * galois_apply(2, n);
    EXPECT_EQ(step, relative_norm(x, {2}));
  }
}

TEST(EpsilonNumber, Examples)
{
  EXPECT_EQ(epsilon_number(AbelianField::cyclotomic(7), 7, 1), CycloElt::one_minus_zeta(7, 1));
  EXPECT_EQ(epsilon_number(AbelianField::cyclotomic(3), 9, 1),
            CycloElt::one_minus_zeta(3, 1).embed(9));
  const auto expect = from_poly(15, oracle::mul(oracle::one_minus_x(1), oracle::one_minus_x(11)));
  EXPECT_EQ(epsilon_number(AbelianField::cyclotomic(5), 15, 1), expect);
  EXPECT_THROW(epsilon_number(AbelianField::cyclotomic(5), 15, 30), InvalidArgument);
  EXPECT_THROW(epsilon_number(AbelianField::cyclotomic(5), 1, 1), InvalidArgument);
}

TEST(Distribution, Examples)
{
  EXPECT_TRUE(verify_distribution(3, 9));
  EXPECT_TRUE(verify_distribution(5, 15));
  EXPECT_TRUE(verify_distribution(7, 21));
  EXPECT_THROW(verify_distribution(2, 6), InvalidArgument);
  EXPECT_THROW(verify_distribution(5, 12), InvalidArgument);
  EXPECT_THROW(verify_distribution(3, 600), InvalidArgument);
}

TEST(Distribution, FiveFifteenByHand)
{
  // (1-z)(1-z^11)(1-z^6) = 1-z^3 in Z[z]/Phi_15, i.e. N(1-zeta_15) (1-zeta_5^2) = 1-zeta_5.
  const auto phi = oracle::cyclotomic(15);
  const auto lhs = oracle::rem(
      oracle::mul(oracle::mul(oracle::one_minus_x(1), oracle::one_minus_x(11)), oracle::one_minus_x(6)),
      phi);
  EXPECT_EQ(lhs, oracle::rem(oracle::one_minus_x(3), phi));
}

TEST(Distribution, SweepUpToSixty)
{
  for (u64 s = 4; s <= 60; ++s)
    for (u64 r = 3; r < s; ++r)
      if (s % r == 0)
        EXPECT_TRUE(verify_distribution(r, s)) << r << " | " << s;
}

TEST(Distribution, SweepCountsAndCorruption)
{
  // Pairs r | s with 2 < r < s <= 20, counted by hand-free enumeration.
  std::size_t pairs = 0;
  for (u64 s = 1; s <= 20; ++s)
    for (u64 r = 1; r <= s; ++r)
      pairs += (r > 2 && r < s && s % r == 0);
  const auto ok = distribution_sweep(20);
  EXPECT_EQ(ok.pairs, pairs);
  EXPECT_TRUE(ok.failures.empty());
  const auto bad = distribution_sweep(20, true);
  EXPECT_EQ(bad.failures.size(), pairs);
  EXPECT_FALSE(verify_distribution(3, 9, 512, true));
}

TEST(NormTower, Branches)
{
  auto q = verify_norm_tower(AbelianField::rationals(), 3);
  EXPECT_TRUE(q.holds);
  EXPECT_EQ(q.layer_conductor, 9u);

  auto cubic = verify_norm_tower(AbelianField(7, {6}), 3);
  EXPECT_TRUE(cubic.holds);
  EXPECT_FALSE(cubic.p_divides_f);
  EXPECT_EQ(cubic.layer_conductor, 63u);

  auto plus9 = verify_norm_tower(AbelianField(9, {8}), 3);
  EXPECT_TRUE(plus9.holds);
  EXPECT_TRUE(plus9.p_divides_f);

  EXPECT_TRUE(verify_norm_tower(AbelianField::cyclotomic(5), 3).holds);
  EXPECT_TRUE(verify_norm_tower(AbelianField::cyclotomic(7), 5).holds);
}

TEST(CycloElt, EmbedIsRingMap)
{
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const CycloElt x = random_elt(5, rng), y = random_elt(5, rng);
    EXPECT_EQ((x * y).embed(35), x.embed(35) * y.embed(35));
    EXPECT_EQ((x + y).embed(15), x.embed(15) + y.embed(15));
  }
}
