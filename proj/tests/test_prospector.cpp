#include "oracles.hpp"

#include "sinnott/error.hpp"
#include "sinnott/prospector.hpp"

#include <gtest/gtest.h>

using namespace sinnott;

namespace {

// Every ordered pair checked against explicit p-th power tables.
bool brute_guenstig(const std::vector<u64>& primes, u64 p)
{
  for (u64 lj : primes) {
    const auto powers = oracle::pth_powers(lj, p);
    for (u64 li : primes)
      if (li != lj && !powers.count(li % lj))
        return false;
  }
  return true;
}

} // namespace

TEST(VerifyTuple, RejectsMalformed)
{
  EXPECT_THROW(verify_tuple({7, 7, 13, 19}, 3), InvalidArgument);
  EXPECT_THROW(verify_tuple({7, 13, 19}, 3), InvalidArgument);
  EXPECT_THROW(verify_tuple({7, 13, 19, 25}, 3), InvalidArgument);
  EXPECT_THROW(verify_tuple({7, 13, 19, 3}, 3), InvalidArgument);
  EXPECT_THROW(verify_tuple({7, 13, 19, 29}, 3), CheckFailure); // 29 = 2 mod 3
  EXPECT_THROW(verify_tuple({7, 13, 19, 31}, 2), InvalidArgument);
}

TEST(VerifyTuple, NamesFirstFailingPair)
{
  // 7^4 = 9 mod 13, so 7 is not a cube mod 13.
  EXPECT_EQ(oracle::power(7, 4, 13), 9u);
  auto r = check_tuple({7, 13, 19, 31}, 3);
  ASSERT_TRUE(std::holds_alternative<TupleRejection>(r));
  const auto& rej = std::get<TupleRejection>(r);
  EXPECT_EQ(rej.kind, TupleRejection::Kind::Residue);
  ASSERT_TRUE(rej.pair.has_value());
  EXPECT_EQ(*rej.pair, (std::pair<u64, u64>{7, 13}));
  try {
    verify_tuple({7, 13, 19, 31}, 3);
    FAIL();
  } catch (const CheckFailure& e) {
    EXPECT_NE(std::string(e.what()).find("7 is not a p-th power modulo 13 (p = 3)"), std::string::npos);
  }
}

TEST(Prospect, TooSmallBound)
{
  EXPECT_TRUE(prospect(3, 10, 5).empty());
  EXPECT_THROW(prospect(3, 6, 5), InvalidArgument);
}

TEST(Prospect, FixtureIsSmallestSufficientBound)
{
  auto fx = oracle::fixture("p3_tuple.json");
  const u64 bound = fx.at("bound").get<u64>();
  const auto primes = fx.at("primes").get<std::vector<u64>>();
  EXPECT_TRUE(prospect(3, bound - 1, 1).empty());
  auto found = prospect(3, bound, 1);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].primes, primes);
  EXPECT_TRUE(brute_guenstig(primes, 3));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(found[0].evidence[i][j], i != j);
}

TEST(Prospect, SoundAndDeterministic)
{
  auto a = prospect(3, 6000, 8);
  auto b = prospect(3, 6000, 8);
  EXPECT_EQ(a, b);
  ASSERT_FALSE(a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(brute_guenstig(a[i].primes, 3));
    EXPECT_NO_THROW(verify_tuple(a[i].primes, 3));
    if (i)
      EXPECT_LT(a[i - 1].primes, a[i].primes);
  }
}

TEST(Prospect, CompleteOnSmallRange)
{
  // Exhaustive enumeration of 4-subsets of primes = 1 mod 3 below 2000.
  std::vector<u64> ps;
  for (u64 l = 7; l < 2000; l += 6)
    if (oracle::prime(l))
      ps.push_back(l);
  std::vector<std::vector<u64>> expect;
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = a + 1; b < ps.size(); ++b) {
      if (!brute_guenstig({ps[a], ps[b]}, 3))
        continue;
      for (std::size_t c = b + 1; c < ps.size(); ++c) {
        if (!brute_guenstig({ps[a], ps[b], ps[c]}, 3))
          continue;
        for (std::size_t d = c + 1; d < ps.size(); ++d)
          if (brute_guenstig({ps[a], ps[b], ps[c], ps[d]}, 3))
            expect.push_back({ps[a], ps[b], ps[c], ps[d]});
      }
    }
  auto got = prospect(3, 2000, 1000);
  ASSERT_EQ(got.size(), expect.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    EXPECT_EQ(got[i].primes, expect[i]);
}

TEST(GuenstigeTuple, JsonRoundTrip)
{
  auto t = verify_tuple({139, 199, 661, 1303}, 3);
  EXPECT_EQ(GuenstigeTuple::from_json(t.to_json()), t);
  EXPECT_EQ(t.to_json().at("primes"), nlohmann::json({139, 199, 661, 1303}));
}
