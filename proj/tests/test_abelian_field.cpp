#include "oracles.hpp"

#include "sinnott/abelian_field.hpp"
#include "sinnott/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace sinnott;

namespace {

std::vector<u64> units_mod(u64 f)
{
  std::vector<u64> u;
  for (u64 x = 1; x <= f; ++x)
    if (std::gcd(x % f, f) == 1)
      u.push_back(x % f);
  std::sort(u.begin(), u.end());
  return u;
}

std::set<u64> closure(u64 f, const std::vector<u64>& gens)
{
  std::set<u64> h{1 % f};
  std::vector<u64> todo{1 % f};
  while (!todo.empty()) {
    u64 x = todo.back();
    todo.pop_back();
    for (u64 g : gens) {
      u64 y = x * g % f;
      if (h.insert(y).second)
        todo.push_back(y);
    }
  }
  return h;
}

// Smallest divisor f0 of f with {x = 1 mod f0} inside H.
u64 brute_conductor(u64 f, const std::set<u64>& h)
{
  for (u64 f0 = 1; f0 <= f; ++f0) {
    if (f % f0)
      continue;
    bool ok = true;
    for (u64 x : units_mod(f))
      if (x % f0 == 1 % f0 && !h.count(x)) {
        ok = false;
        break;
      }
    if (ok)
      return f0;
  }
  return f;
}

AbelianField fixture_field()
{
  auto fx = oracle::fixture("p3_tuple.json");
  return build_counterexample_field(fx.at("primes").get<std::vector<u64>>(), 3).field;
}

} // namespace

TEST(Conductor, Examples)
{
  for (u64 f : {3, 4, 5, 7, 9, 15, 20, 63, 105})
    EXPECT_EQ(AbelianField::cyclotomic(f).conductor(), f);
  EXPECT_EQ(AbelianField::cyclotomic(14).conductor(), 7u);
  EXPECT_EQ(AbelianField(21, units_mod(21)).conductor(), 1u);
  EXPECT_EQ(AbelianField::rationals().conductor(), 1u);
  // Degree-2 and degree-3 subfields of Q(zeta_7).
  EXPECT_EQ(AbelianField(7, {2}).conductor(), 7u);
  EXPECT_EQ(AbelianField(7, {2}).degree(), 2u);
  EXPECT_EQ(AbelianField(7, {6}).conductor(), 7u);
  EXPECT_EQ(AbelianField(7, {6}).degree(), 3u);
  // Q(sqrt 5) inside Q(zeta_20), fixed by {x = +-1 mod 5}.
  EXPECT_EQ(AbelianField(20, {9, 11}).conductor(), 5u);
  EXPECT_EQ(AbelianField(20, {3, 11}).conductor(), 1u);
}

TEST(Conductor, RandomSubgroupsAgreeWithDivisorScan)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const u64 f = 3 + rng() % 150;
    const auto units = units_mod(f);
    std::vector<u64> gens;
    for (int j = 0, n = 1 + static_cast<int>(rng() % 3); j < n; ++j)
      gens.push_back(units[rng() % units.size()]);
    const auto h = closure(f, gens);
    const AbelianField k(f, gens);
    ASSERT_EQ(k.degree() * h.size(), units.size()) << f;
    ASSERT_EQ(k.conductor(), brute_conductor(f, h)) << "f=" << f;
    for (u64 x : units)
      ASSERT_EQ(k.fixes(x), h.count(x) == 1);
    // Moving to the conductor and back gives the same field.
    EXPECT_EQ(k.at_conductor(), k);
    EXPECT_EQ(k.at_conductor().lifted(f * 3), k);
  }
}

TEST(Frobenius, Basics)
{
  const AbelianField k(7, {6}); // cubic field
  EXPECT_TRUE(k.frobenius_class(29).trivial);     // 29 = 1 mod 7
  EXPECT_TRUE(k.frobenius_class(13).trivial);     // 13 = -1 mod 7
  EXPECT_FALSE(k.frobenius_class(2).trivial);
  EXPECT_THROW(k.frobenius_class(7), InvalidArgument);
  for (u64 l : {2, 3, 5, 11})
    EXPECT_TRUE(AbelianField::rationals().frobenius_class(l).trivial);
}

TEST(Frobenius, Multiplicative)
{
  const AbelianField k = AbelianField(91, {3}).at_conductor();
  const Lattice lat = k.fixing_lattice();
  const u64 f = k.conductor();
  for (u64 a : {2, 5, 11, 17})
    for (u64 b : {3, 19, 23}) {
      if (std::gcd(a * b, f) != 1)
        continue;
      auto ca = k.frobenius_class(a).representative;
      auto cb = k.frobenius_class(b).representative;
      IntVec sum(ca.size());
      for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = ca[i] + cb[i];
      EXPECT_EQ(lat.reduce(sum), k.class_of(a * b % f));
    }
}

TEST(InertiaField, Examples)
{
  const AbelianField k(7, {6});
  EXPECT_EQ(k.inertia_field(3), k);
  EXPECT_EQ(AbelianField::cyclotomic(21).inertia_field(3), AbelianField::cyclotomic(7));
  EXPECT_EQ(AbelianField::cyclotomic(63).inertia_field(3), AbelianField::cyclotomic(7));
  EXPECT_EQ(AbelianField::cyclotomic(27).inertia_field(3), AbelianField::rationals());
}

TEST(Tower, Layers)
{
  const AbelianField q1 = cyclotomic_zp_layer(3, 1);
  EXPECT_EQ(q1.degree(), 3u);
  EXPECT_EQ(q1.conductor(), 9u);
  EXPECT_EQ(first_tower_layer(AbelianField::rationals(), 3), q1);
  const AbelianField k(7, {6});
  const AbelianField k1 = first_tower_layer(k, 3);
  EXPECT_EQ(k1.degree(), 9u);
  EXPECT_EQ(k1.conductor(), 63u);
  EXPECT_EQ(tower_layer(k, 3, 2).degree(), 27u);
  EXPECT_TRUE(k.is_subfield_of(k1));
}

TEST(Subfields, IndexP)
{
  // The degree-9 subfield of Q(zeta_63): fixed by the 2-torsion {1, 8, 55, 62}.
  const AbelianField nine(63, {62, 8});
  ASSERT_EQ(nine.degree(), 9u);
  auto subs = nine.index_p_subfields(3);
  EXPECT_EQ(subs.size(), 4u);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    EXPECT_EQ(subs[i].degree(), 3u);
    EXPECT_TRUE(subs[i].is_subfield_of(nine));
    for (std::size_t j = 0; j < i; ++j)
      EXPECT_FALSE(subs[i] == subs[j]);
  }
}

TEST(CounterexampleField, FixtureTupleSatisfiesConditions)
{
  auto fx = oracle::fixture("p3_tuple.json");
  const auto primes = fx.at("primes").get<std::vector<u64>>();
  const auto cf = build_counterexample_field(primes, 3);
  u64 prod = 1;
  for (u64 l : primes)
    prod *= l;
  EXPECT_EQ(cf.field.degree(), 9u);
  EXPECT_EQ(cf.field.conductor(), prod);
  ASSERT_EQ(cf.subfields.size(), 4u);
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(cf.subfields[j].degree(), 3u);
    EXPECT_EQ(cf.subfields[j].conductor(), prod / primes[j]);
    EXPECT_TRUE(cf.subfields[j].is_subfield_of(cf.field));
    EXPECT_TRUE(cf.subfields[j].frobenius_class(primes[j]).trivial);
  }
  // The builder's subfields are exactly the index-3 subfields.
  auto subs = cf.field.index_p_subfields(3);
  ASSERT_EQ(subs.size(), 4u);
  for (const auto& s : subs)
    EXPECT_EQ(std::count(cf.subfields.begin(), cf.subfields.end(), s), 1);
  // One line of (Z/3)^2 per prime.
  auto lines = projective_line_directions(3);
  EXPECT_EQ(lines.size(), 4u);
  std::set<std::array<u64, 2>> seen(cf.vectors.begin(), cf.vectors.end());
  EXPECT_EQ(seen.size(), 4u);
}

TEST(CounterexampleField, CharacterMapKillsExactlyTheFixingGroup)
{
  auto fx = oracle::fixture("p3_tuple.json");
  const auto cf = build_counterexample_field(fx.at("primes").get<std::vector<u64>>(), 3);
  std::mt19937_64 rng(3);
  const u64 f = cf.field.modulus();
  for (int trial = 0; trial < 200; ++trial) {
    u64 x = 1 + rng() % (f - 1);
    if (std::gcd(x, f) != 1)
      continue;
    const auto img = cf.galois_image(x);
    EXPECT_EQ(img[0] == 0 && img[1] == 0, cf.field.fixes(x));
    // chi_i(x) from brute-force discrete logs modulo each l_i.
    std::array<u64, 2> expect{0, 0};
    for (std::size_t i = 0; i < cf.primes.size(); ++i) {
      const u64 l = cf.primes[i];
      u64 e = 0;
      for (u64 y = 1; y != x % l; y = y * cf.primitive_roots[i] % l)
        ++e;
      for (int c = 0; c < 2; ++c)
        expect[c] = (expect[c] + e % 3 * cf.vectors[i][c]) % 3;
    }
    EXPECT_EQ(img, expect);
  }
}

TEST(CounterexampleField, RejectsBadTuples)
{
  EXPECT_THROW(build_counterexample_field({7, 13, 19, 31}, 3), CheckFailure);
  EXPECT_THROW(build_counterexample_field({7, 13, 19}, 3), InvalidArgument);
}

TEST(CounterexampleField, InertiaStabilizes)
{
  const AbelianField k = fixture_field();
  const auto st = inertia_stabilization(k, 3, 2);
  EXPECT_EQ(st.index, 0);
  EXPECT_EQ(st.field, k);
}

TEST(AbelianFieldJson, RoundTrip)
{
  const AbelianField k(91, {3});
  EXPECT_EQ(AbelianField::from_json(k.to_json()), k);
  const AbelianField big = fixture_field();
  EXPECT_EQ(AbelianField::from_json(big.to_json()), big);
  EXPECT_EQ(big.to_json().dump(), AbelianField::from_json(big.to_json()).to_json().dump());
}
