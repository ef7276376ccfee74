#include "oracles.hpp"

#include "sinnott/error.hpp"
#include "sinnott/group_ring.hpp"

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <random>

using namespace sinnott;

namespace {

GroupRingElt random_elt(const SpecPtr& spec, std::mt19937_64& rng)
{
  GroupRingElt x(spec);
  for (int t = 0; t < spec->degree(); ++t)
    for (std::uint32_t g = 0; g < spec->group().size(); ++g)
      x.set_coefficient(t, g, rng() % spec->modulus());
  return x;
}

// Coefficient of T^j in 1 - (1+T)^{-c} for an integer c >= 0:
// -binom(-c, j) = (-1)^{j+1} binom(c+j-1, j).
u64 series_coefficient(u64 c, unsigned j, u64 mod)
{
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), c + j - 1, j);
  if (j % 2 == 0)
    b = -b;
  mpz_class r = b % mpz_class(static_cast<unsigned long>(mod));
  if (r < 0)
    r += static_cast<unsigned long>(mod);
  return r.get_ui();
}

} // namespace

TEST(OneMinusFrobInv, ZeroAndOne)
{
  auto spec = RingSpec::truncated(3, 8, 16);
  const int need = frobenius_precision_needed(*spec);
  EXPECT_EQ(need, 10);
  EXPECT_TRUE(one_minus_frob_inv(PadicInt(3, need, 0), spec).is_zero());
  const GroupRingElt u = one_minus_frob_inv(PadicInt(3, need, 1), spec);
  for (int t = 0; t < 16; ++t)
    EXPECT_EQ(u.coefficient(t, 0), t == 0 ? 0u : (t % 2 ? 1u : spec->modulus() - 1)) << t;
}

TEST(OneMinusFrobInv, MatchesBinomialSeries)
{
  std::mt19937_64 rng(7);
  for (u64 p : {3, 5})
    for (int k : {1, 4, 8})
      for (int d : {2, 9, 16}) {
        auto spec = RingSpec::truncated(p, k, d);
        const int need = frobenius_precision_needed(*spec);
        const u64 period = oracle::power(p, need, ~u64{0});
        for (int trial = 0; trial < 5; ++trial) {
          const u64 c = rng() % period;
          const GroupRingElt u = one_minus_frob_inv(PadicInt::from_unsigned(p, need, c), spec);
          EXPECT_EQ(u.coefficient(0, 0), 0u);
          for (int j = 1; j < d; ++j)
            ASSERT_EQ(u.coefficient(j, 0), series_coefficient(c, j, spec->modulus()))
                << "p=" << p << " k=" << k << " d=" << d << " c=" << c << " j=" << j;
        }
      }
}

TEST(OneMinusFrobInv, CocycleIdentity)
{
  std::mt19937_64 rng(8);
  for (u64 p : {3, 5}) {
    auto spec = RingSpec::truncated(p, 6, 12);
    const int need = frobenius_precision_needed(*spec);
    const GroupRingElt one = GroupRingElt::scalar(spec, 1);
    for (int trial = 0; trial < 10; ++trial) {
      const PadicInt c1 = PadicInt::from_unsigned(p, need, rng());
      const PadicInt c2 = PadicInt::from_unsigned(p, need, rng());
      const auto u1 = one_minus_frob_inv(c1, spec), u2 = one_minus_frob_inv(c2, spec);
      EXPECT_EQ(one_minus_frob_inv(c1 + c2, spec), one - (one - u1) * (one - u2));
    }
  }
}

TEST(OneMinusFrobInv, NeedsEnoughPrecision)
{
  auto spec = RingSpec::truncated(3, 8, 16);
  EXPECT_THROW(one_minus_frob_inv(PadicInt(3, 8, 5), spec), PrecisionError);
  EXPECT_THROW(one_minus_frob_inv(PadicInt(5, 10, 5), spec), InvalidArgument);
}

TEST(OneMinusFrobInv, FiniteLevelIsOneMinusGammaPower)
{
  auto spec = RingSpec::finite_level(3, 5, 2);
  const GroupRingElt gamma = GroupRingElt::gamma(spec);
  const GroupRingElt one = GroupRingElt::scalar(spec, 1);
  for (u64 c = 0; c < 30; ++c) {
    // gamma^c * (1 - gamma^{-c}) = gamma^c - 1.
    const auto u = one_minus_frob_inv(PadicInt::from_unsigned(3, 2, c), spec);
    EXPECT_EQ(gamma.pow(c) * u, gamma.pow(c) - one);
  }
}

TEST(DivideByT, Examples)
{
  auto spec = RingSpec::truncated(3, 8, 16);
  EXPECT_EQ(divide_by_T(GroupRingElt::T(spec)), GroupRingElt::scalar(spec->with_degree(15), 1));
  EXPECT_THROW(divide_by_T(GroupRingElt::scalar(spec, 1)), CheckFailure);
  const int need = frobenius_precision_needed(*spec);
  for (u64 c : {1, 2, 5, 19, 100}) {
    const auto q = divide_by_T(one_minus_frob_inv(PadicInt::from_unsigned(3, need, c), spec));
    EXPECT_EQ(q.spec()->degree(), 15);
    EXPECT_EQ(q.coefficient(0, 0), c % spec->modulus());
    EXPECT_EQ(is_prime_to_p(q), c % 3 != 0);
  }
  EXPECT_THROW(divide_by_T(GroupRingElt::T(RingSpec::finite_level(3, 4, 1))), InvalidArgument);
}

TEST(DivideByT, InvertsMultiplicationByT)
{
  std::mt19937_64 rng(9);
  auto spec = RingSpec::truncated(5, 4, 10, {5, 5});
  for (int trial = 0; trial < 10; ++trial) {
    const GroupRingElt y = random_elt(spec, rng);
    EXPECT_EQ(divide_by_T(GroupRingElt::T(spec) * y), y.truncated(9));
  }
}

TEST(TraceElement, Basics)
{
  auto spec = RingSpec::truncated(3, 4, 4, {3, 3});
  const auto& G = spec->group();
  EXPECT_EQ(trace_element(G.trivial(), spec), GroupRingElt::scalar(spec, 1));
  const auto tg = trace_element(G.whole(), spec);
  for (std::uint32_t g = 0; g < 9; ++g)
    EXPECT_EQ(tg.coefficient(0, g), 1u);
  for (const Subgroup& h : G.order_p_subgroups(3)) {
    const auto th = trace_element(h, spec);
    for (std::uint32_t x : h)
      EXPECT_EQ(th * GroupRingElt::group_element(spec, x), th);
  }
}

TEST(FormalIdentity, HoldsForRankTwo)
{
  for (u64 p : {3, 5, 7}) {
    auto spec = RingSpec::truncated(p, 4, 3, {p, p});
    EXPECT_EQ(spec->group().order_p_subgroups(p).size(), p + 1);
    EXPECT_TRUE(formal_identity_check(p, spec));
  }
}

TEST(FormalIdentity, CyclicGroupIsRejected)
{
  auto cyclic = RingSpec::truncated(3, 4, 3, {3});
  EXPECT_THROW(formal_identity_check(3, cyclic), InvalidArgument);
  // The same sum over the single order-3 subgroup is 0, not 3.
  for (i64 v : formal_identity_defect(cyclic->group(), 3))
    EXPECT_EQ(v, 0);
  EXPECT_THROW(formal_identity_check(3, RingSpec::truncated(3, 4, 3, {9})), InvalidArgument);
}

TEST(IsPrimeToP, Examples)
{
  auto spec = RingSpec::truncated(3, 4, 4);
  EXPECT_FALSE(is_prime_to_p(GroupRingElt::scalar(spec, 3)));
  EXPECT_FALSE(is_prime_to_p(GroupRingElt::zero(spec)));
  EXPECT_TRUE(is_prime_to_p(GroupRingElt::T(spec)));
}

TEST(GroupRing, RingAxioms)
{
  std::mt19937_64 rng(10);
  std::vector<SpecPtr> specs{RingSpec::truncated(3, 8, 16, {3, 3}), RingSpec::truncated(5, 3, 7),
                             RingSpec::finite_level(3, 8, 2, {3}),
                             RingSpec::finite_level(5, 2, 1, {5, 5})};
  for (const auto& spec : specs)
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_elt(spec, rng), b = random_elt(spec, rng), c = random_elt(spec, rng);
      EXPECT_EQ((a * b) * c, a * (b * c)) << spec->describe();
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * GroupRingElt::scalar(spec, 1), a);
    }
}

TEST(GroupRing, FiniteLevel)
{
  for (int n = 0; n <= 3; ++n) {
    auto spec = RingSpec::finite_level(3, 6, n);
    const auto gamma = GroupRingElt::gamma(spec);
    EXPECT_EQ(gamma.pow(oracle::power(3, n, ~u64{0})), GroupRingElt::scalar(spec, 1));
    if (n > 0) {
      auto lower = RingSpec::finite_level(3, 6, n - 1);
      std::mt19937_64 rng(n);
      const auto a = random_elt(spec, rng), b = random_elt(spec, rng);
      EXPECT_EQ((a * b).projected(lower), a.projected(lower) * b.projected(lower));
      EXPECT_EQ(gamma.projected(lower), GroupRingElt::gamma(lower));
    }
  }
}

TEST(GroupRing, GeometricSum)
{
  auto spec = RingSpec::finite_level(3, 8, 2, {3});
  const auto g = GroupRingElt::gamma(spec) * GroupRingElt::group_element(spec, 1);
  GroupRingElt naive = GroupRingElt::zero(spec), pw = GroupRingElt::scalar(spec, 1);
  for (u64 n = 0; n < 40; ++n) {
    EXPECT_EQ(geometric_sum(g, n), naive) << n;
    naive = naive + pw;
    pw = pw * g;
  }
}

TEST(GroupRing, JsonRoundTrip)
{
  std::mt19937_64 rng(12);
  for (const auto& spec : {RingSpec::truncated(3, 8, 5, {3, 3}), RingSpec::finite_level(5, 3, 1)}) {
    const auto x = random_elt(spec, rng);
    EXPECT_EQ(GroupRingElt::from_json(x.to_json()), x);
    EXPECT_EQ(GroupRingElt::from_json(x.to_json()).to_json().dump(), x.to_json().dump());
  }
}
