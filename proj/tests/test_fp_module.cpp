#include "oracles.hpp"

#include "sinnott/error.hpp"
#include "sinnott/fp_module.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sinnott;

namespace {

using Rel = std::vector<GroupRingElt>;

GroupRingElt random_elt(const SpecPtr& spec, std::mt19937_64& rng)
{
  GroupRingElt x(spec);
  for (int t = 0; t < spec->degree(); ++t)
    for (std::uint32_t g = 0; g < spec->group().size(); ++g)
      x.set_coefficient(t, g, rng() % spec->modulus());
  return x;
}

// Relations rewritten in the generators e'_j = sum_i U_ji e_i for a random
// unitriangular U, which presents an isomorphic module.
std::vector<Rel> scramble(const std::vector<Rel>& rels, const SpecPtr& spec, std::size_t n,
                          std::mt19937_64& rng)
{
  std::vector<std::vector<GroupRingElt>> u(n, std::vector<GroupRingElt>(n, GroupRingElt::zero(spec)));
  for (std::size_t i = 0; i < n; ++i) {
    u[i][i] = GroupRingElt::scalar(spec, 1);
    for (std::size_t j = 0; j < i; ++j)
      u[i][j] = random_elt(spec, rng);
  }
  std::vector<Rel> out;
  for (const Rel& r : rels) {
    Rel s(n, GroupRingElt::zero(spec));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        s[j] = s[j] + r[i] * u[i][j];
    out.push_back(s);
  }
  return out;
}

std::vector<Subgroup> trivial_stabs(const SpecPtr& spec, std::size_t n)
{
  return std::vector<Subgroup>(n, spec->group().trivial());
}

// Free module of rank r presented with r + extra generators.
FPModule redundant_free(const SpecPtr& spec, std::size_t r, std::size_t extra, std::mt19937_64& rng)
{
  const std::size_t n = r + extra;
  std::vector<Rel> rels;
  for (std::size_t j = 0; j < extra; ++j) {
    Rel rel(n, GroupRingElt::zero(spec));
    for (std::size_t i = 0; i < r; ++i)
      rel[i] = random_elt(spec, rng);
    rel[r + j] = GroupRingElt::scalar(spec, -1);
    rels.push_back(rel);
  }
  return FPModule(spec, trivial_stabs(spec, n), scramble(rels, spec, n, rng));
}

} // namespace

TEST(FPModule, FreeModules)
{
  for (const auto& spec : {RingSpec::truncated(3, 4, 5, {3, 3}), RingSpec::truncated(5, 3, 4),
                           RingSpec::finite_level(3, 3, 1, {3})}) {
    for (std::size_t r = 1; r <= 3; ++r) {
      const FPModule m = FPModule::free(spec, r);
      EXPECT_EQ(m.nakayama_rank(), r);
      EXPECT_TRUE(is_free_local(m));
      const FPModule c = m.coinvariants();
      EXPECT_EQ(c.nakayama_rank(), r);
      EXPECT_TRUE(is_free_local(c));
      EXPECT_EQ(c.log_cardinality(), static_cast<long>(r * spec->group().size() * spec->precision()));
    }
  }
}

TEST(FPModule, RandomFreePresentationsAreFree)
{
  std::mt19937_64 rng(21);
  for (const auto& spec : {RingSpec::truncated(3, 3, 4, {3}), RingSpec::truncated(5, 2, 6)})
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t r = 1 + rng() % 3, extra = rng() % 3;
      const FPModule m = redundant_free(spec, r, extra, rng);
      EXPECT_EQ(m.nakayama_rank(), r);
      EXPECT_TRUE(is_free_local(m));
    }
}

TEST(FPModule, TorsionSummandsAreNotFree)
{
  std::mt19937_64 rng(22);
  for (const auto& spec : {RingSpec::truncated(3, 3, 4, {3}), RingSpec::truncated(5, 2, 6)})
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t r = 1 + rng() % 2;
      const std::size_t n = r + 1;
      // e_n killed by p^a (a < k) or by T^b (b < d), inside a scrambled basis.
      Rel tors(n, GroupRingElt::zero(spec));
      if (trial % 2)
        tors[r] = GroupRingElt::scalar(spec, static_cast<i64>(oracle::power(spec->prime(),
                                                                            1 + rng() % (spec->precision() - 1), ~u64{0})));
      else
        tors[r] = GroupRingElt::T(spec).pow(1 + rng() % (spec->degree() - 1));
      const FPModule m(spec, trivial_stabs(spec, n), scramble({tors}, spec, n, rng));
      EXPECT_EQ(m.nakayama_rank(), n);
      EXPECT_FALSE(is_free_local(m));
    }
  // R/(p) + R.
  auto spec = RingSpec::truncated(3, 4, 4);
  const FPModule m(spec, trivial_stabs(spec, 2),
                   {{GroupRingElt::scalar(spec, 3), GroupRingElt::zero(spec)}});
  EXPECT_FALSE(is_free_local(m));
}

TEST(FPModule, UnitRelationDropsRank)
{
  auto spec = RingSpec::truncated(3, 4, 4, {3});
  const auto unit = GroupRingElt::scalar(spec, 2) + GroupRingElt::T(spec);
  const FPModule m(spec, trivial_stabs(spec, 2), {{unit, GroupRingElt::T(spec)}});
  EXPECT_EQ(m.nakayama_rank(), 1u);
  EXPECT_TRUE(is_free_local(m));
  EXPECT_THROW(is_free_local(FPModule::free(RingSpec::truncated(3, 2, 2, {2}), 1)), InvalidArgument);
}

TEST(FPModule, CoinvariantsKeepTKilledGenerator)
{
  auto spec = RingSpec::truncated(3, 3, 5);
  const FPModule m(spec, trivial_stabs(spec, 2), {{GroupRingElt::T(spec), GroupRingElt::zero(spec)}});
  const FPModule c = m.coinvariants();
  EXPECT_FALSE(c.is_zero(c.generator(0)));
  EXPECT_EQ(c.log_cardinality(), 2 * 3);
}

TEST(FPModule, StabilizersAreBuiltIn)
{
  auto spec = RingSpec::truncated(3, 4, 3, {3, 3});
  const auto& G = spec->group();
  const auto lines = G.order_p_subgroups(3);
  const FPModule m = FPModule::from_coordinates(spec, {lines[0], G.whole(), G.trivial()}, {});
  EXPECT_EQ(m.dimension(), 3u * (3 + 1 + 9));
  for (std::uint32_t h : lines[0])
    EXPECT_EQ(m.act(GroupRingElt::group_element(spec, h), m.generator(0)), m.generator(0));
  EXPECT_NE(m.act(GroupRingElt::group_element(spec, lines[1][1]), m.generator(0)), m.generator(0));
  // R[G/S] is not free over R[G] once S is nontrivial.
  EXPECT_FALSE(is_free_local(m));
  EXPECT_EQ(m.restrict_to_lambda().nakayama_rank(), 3u + 1 + 9);
  EXPECT_TRUE(is_free_local(m.restrict_to_lambda()));
}

TEST(Invariants, TrivialSubgroupGivesEverything)
{
  auto spec = RingSpec::truncated(3, 3, 3, {3});
  const FPModule m = FPModule::free(spec, 2);
  const HowellForm inv = subgroup_invariants(m, spec->group().trivial());
  EXPECT_EQ(inv.log_cardinality(), m.log_cardinality());
}

TEST(Invariants, FreeModuleInvariantsAreTraces)
{
  for (u64 p : {3, 5}) {
    auto spec = RingSpec::truncated(p, 3, 3, {p});
    const FPModule m = FPModule::free(spec, 1);
    const Subgroup whole = spec->group().whole();
    const HowellForm inv = subgroup_invariants(m, whole);
    const HowellForm tr = m.submodule({m.act(trace_element(whole, spec), m.generator(0))});
    EXPECT_EQ(inv, tr);
  }
  // Inside (Z/3)^2, invariants of one line in R[G].
  auto spec = RingSpec::truncated(3, 2, 2, {3, 3});
  const FPModule m = FPModule::free(spec, 2);
  for (const Subgroup& h : spec->group().order_p_subgroups(3)) {
    const GroupRingElt tr = trace_element(h, spec);
    EXPECT_EQ(subgroup_invariants(m, h), m.submodule({m.act(tr, m.generator(0)),
                                                       m.act(tr, m.generator(1))}));
  }
}

TEST(FiniteIndexFreeness, Cases)
{
  auto spec = RingSpec::truncated(3, 4, 5);
  const FPModule y = FPModule::free(spec, 2);
  const Vec e0 = y.generator(0), e1 = y.generator(1);
  auto times = [&](const GroupRingElt& r, const Vec& v) { return y.act(r, v); };
  const auto p = GroupRingElt::scalar(spec, 3);
  const auto T = GroupRingElt::T(spec);

  auto same = finite_index_freeness({e0, e1}, y);
  EXPECT_TRUE(same.free);
  EXPECT_TRUE(same.finite_index_certified);
  EXPECT_EQ(same.log_index, 0);

  auto pY = finite_index_freeness({times(p, e0), times(p, e1)}, y);
  EXPECT_FALSE(pY.free);
  EXPECT_EQ(pY.log_index, 2 * 5);
  EXPECT_FALSE(pY.finite_index_certified);
  EXPECT_FALSE(pY.caveat.empty());

  auto tY = finite_index_freeness({times(T, e0), times(T, e1)}, y);
  EXPECT_FALSE(tY.free);
  EXPECT_FALSE(tY.finite_index_certified);

  auto mY = finite_index_freeness({times(p, e0), times(T, e0), times(p, e1), times(T, e1)}, y);
  EXPECT_FALSE(mY.free);
  EXPECT_TRUE(mY.finite_index_certified);
  EXPECT_EQ(mY.log_index, 2);

  // A unit multiple of the basis is all of Y.
  auto unit = finite_index_freeness({times(GroupRingElt::scalar(spec, 1) + T, e0), e1}, y);
  EXPECT_TRUE(unit.free);

  const FPModule notfree(spec, trivial_stabs(spec, 1), {{p}});
  EXPECT_THROW(finite_index_freeness({}, notfree), InvalidArgument);
}

TEST(Descent, IdentityTower)
{
  auto spec = RingSpec::finite_level(3, 3, 1, {3});
  const FPModule m = FPModule::free(spec, 2);
  std::vector<Vec> images{m.generator(0), m.generator(1)};
  const LinearMap id = module_map(m, m, images);
  const auto rep = descent_check(m, m, id, {GroupRingElt::scalar(spec, 1)});
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.log_index, 0);
}

TEST(Descent, FreeTowerPassesAllLevels)
{
  for (std::vector<u64> group : {std::vector<u64>{}, std::vector<u64>{3, 3}}) {
    std::vector<FPModule> levels;
    for (int n = 0; n <= 3; ++n)
      levels.push_back(FPModule::free(RingSpec::finite_level(3, 3, n, group), 1));
    const Tower tower = standard_tower(levels);
    const auto ax = axioms_check(tower);
    EXPECT_TRUE(ax.ok) << (ax.violations.empty() ? "" : ax.violations[0]);
    for (int n = 0; n < 3; ++n) {
      const auto rep = descent_check(tower.levels[n], tower.levels[n + 1], tower.ext[n],
                                     {tower.layer_generator[n]});
      EXPECT_TRUE(rep.holds) << "level " << n;
    }
  }
}

TEST(Descent, TorsionTowerFails)
{
  // M_n = R_n / (T), the trivial module: everything is invariant but the
  // layer trace is multiplication by p.
  std::vector<FPModule> levels;
  for (int n = 0; n <= 2; ++n) {
    auto spec = RingSpec::finite_level(3, 2, n);
    levels.push_back(FPModule(spec, {spec->group().trivial()}, {{GroupRingElt::T(spec)}}));
  }
  const Tower tower = standard_tower(levels);
  EXPECT_TRUE(axioms_check(tower).ok);
  for (int n = 0; n < 2; ++n) {
    const auto rep = descent_check(tower.levels[n], tower.levels[n + 1], tower.ext[n],
                                   {tower.layer_generator[n]});
    EXPECT_FALSE(rep.holds);
    EXPECT_TRUE(rep.image_in_invariants);
    EXPECT_EQ(rep.log_index, 1);
  }
}

TEST(Axioms, CorruptedMapIsNamed)
{
  std::vector<FPModule> levels;
  for (int n = 0; n <= 1; ++n)
    levels.push_back(FPModule::free(RingSpec::finite_level(3, 3, n), 1));
  Tower tower = standard_tower(levels);
  tower.norm[0].columns[0][0] = (tower.norm[0].columns[0][0] + 1) % 27;
  const auto rep = axioms_check(tower);
  EXPECT_FALSE(rep.ok);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_NE(rep.violations[0].find("i o N"), std::string::npos);
}

TEST(Axioms, TrivialTower)
{
  std::vector<FPModule> levels{FPModule::free(RingSpec::finite_level(3, 3, 0), 2)};
  EXPECT_TRUE(axioms_check(standard_tower(levels)).ok);
}
