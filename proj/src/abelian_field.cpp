#include "sinnott/abelian_field.hpp"

#include "sinnott/error.hpp"
#include "sinnott/padic.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace sinnott {

namespace {

u64 crt_combine(u64 r1, u64 m1, u64 r2, u64 m2)
{
  // x = r1 mod m1, x = r2 mod m2, coprime moduli.
  const u64 m = m1 * m2;
  const u64 t = mulmod((r2 + m2 - r1 % m2) % m2, inverse_mod(m1 % m2, m2), m2);
  return (r1 + static_cast<u64>(static_cast<u128>(m1) * t % m)) % m;
}

u64 to_u64(const mpz_class& z)
{
  require(z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64, "value does not fit 64 bits");
  return static_cast<u64>(mpz_get_ui(z.get_mpz_t()));
}

IntVec unit_vector(std::size_t r, std::size_t i, const mpz_class& scale = 1)
{
  IntVec v(r, 0);
  v[i] = scale;
  return v;
}

/// {v in Z^r : c.v = 0 mod p}; c must be nonzero mod p.
Lattice hyperplane_lattice(const std::vector<u64>& c, u64 p)
{
  const std::size_t r = c.size();
  std::size_t pivot = r;
  for (std::size_t i = 0; i < r; ++i)
    if (c[i] % p) {
      pivot = i;
      break;
    }
  require(pivot < r, "hyperplane functional is zero");
  const u64 inv = inverse_mod(c[pivot] % p, p);
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < r; ++i) {
    rows.push_back(unit_vector(r, i, static_cast<unsigned long>(p)));
    if (i == pivot)
      continue;
    IntVec v = unit_vector(r, i);
    v[pivot] = -mpz_class(static_cast<unsigned long>(mulmod(c[i] % p, inv, p)));
    rows.push_back(std::move(v));
  }
  return Lattice::from_generators(r, std::move(rows));
}

u64 lcm_checked(u64 a, u64 b)
{
  const u64 g = std::gcd(a, b);
  const u128 l = static_cast<u128>(a / g) * b;
  require<PrecisionError>(l < (static_cast<u128>(1) << 63), "modulus overflow");
  return static_cast<u64>(l);
}

} // namespace

// ---------------------------------------------------------------- UnitGroup

UnitGroup::UnitGroup(u64 modulus) : modulus_(modulus)
{
  require(modulus >= 1, "modulus must be positive");
  for (auto [q, e] : factorize(modulus)) {
    Block b{q, e, checked_pow(q, e), orders_.size(), {}, 1};
    if (q == 2) {
      if (e == 2)
        b.orders = {2};
      else if (e >= 3)
        b.orders = {2, checked_pow(2, e - 2)};
      b.generator = 5;
    } else {
      b.orders = {(q - 1) * checked_pow(q, e - 1)};
      b.generator = primitive_root_prime_power(q, e);
    }
    for (u64 o : b.orders)
      orders_.push_back(static_cast<unsigned long>(o));
    blocks_.push_back(std::move(b));
  }
}

u64 UnitGroup::order() const
{
  u64 n = 1;
  for (const auto& o : orders_)
    n *= to_u64(o);
  return n;
}

IntVec UnitGroup::log(u64 x) const
{
  require(std::gcd(x % modulus_, modulus_) == 1 || modulus_ == 1,
          "log of a non-unit modulo " + std::to_string(modulus_));
  IntVec v(rank(), 0);
  for (const auto& b : blocks_) {
    const u64 xr = x % b.prime_power;
    if (b.prime != 2) {
      v[b.first_coord] =
          static_cast<unsigned long>(discrete_log(b.generator, xr, b.orders[0], b.prime_power));
    } else if (b.exponent == 2) {
      v[b.first_coord] = (xr == 3) ? 1 : 0;
    } else if (b.exponent >= 3) {
      const bool neg = xr % 4 == 3;
      const u64 y = neg ? b.prime_power - xr : xr;
      v[b.first_coord] = neg ? 1 : 0;
      v[b.first_coord + 1] =
          static_cast<unsigned long>(discrete_log(5, y, b.orders[1], b.prime_power));
    }
  }
  return v;
}

u64 UnitGroup::exp(const IntVec& v) const
{
  require(v.size() == rank(), "exponent vector has wrong length");
  u64 x = 0, m = 1;
  for (const auto& b : blocks_) {
    u64 r = 1;
    if (b.prime != 2) {
      mpz_class e = v[b.first_coord] % mpz_class(static_cast<unsigned long>(b.orders[0]));
      if (e < 0)
        e += static_cast<unsigned long>(b.orders[0]);
      r = powmod(b.generator, to_u64(e), b.prime_power);
    } else if (b.exponent >= 2) {
      const bool neg = mpz_odd_p(v[b.first_coord].get_mpz_t());
      if (b.exponent >= 3) {
        mpz_class e = v[b.first_coord + 1] % mpz_class(static_cast<unsigned long>(b.orders[1]));
        if (e < 0)
          e += static_cast<unsigned long>(b.orders[1]);
        r = powmod(5, to_u64(e), b.prime_power);
      }
      if (neg)
        r = b.prime_power - r;
    }
    x = crt_combine(x, m, r % b.prime_power, b.prime_power);
    m *= b.prime_power;
  }
  return modulus_ == 1 ? 0 : x;
}

std::vector<IntVec> UnitGroup::block_generators(const Block& b) const
{
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < b.orders.size(); ++i)
    out.push_back(unit_vector(rank(), b.first_coord + i));
  return out;
}

std::vector<IntVec> UnitGroup::congruence_kernel(const Block& b, int depth) const
{
  const std::size_t r = rank();
  if (depth >= b.exponent)
    return {};
  if (b.prime != 2) {
    if (depth == 0)
      return block_generators(b);
    return {unit_vector(r, b.first_coord,
                        static_cast<unsigned long>((b.prime - 1) * checked_pow(b.prime, depth - 1)))};
  }
  if (depth <= 1)
    return block_generators(b);
  // 2-power block with exponent >= 3: x = 1 mod 2^depth is <5^(2^(depth-2))>.
  return {unit_vector(r, b.first_coord + 1,
                      static_cast<unsigned long>(checked_pow(2, depth - 2)))};
}

u64 UnitGroup::lift_from(u64 a, u64 m) const
{
  u64 x = 0, mm = 1;
  for (const auto& b : blocks_) {
    int d = 0;
    if (m != 0)
      d = std::min(b.exponent, m % b.prime == 0 ? valuation(m, b.prime) : 0);
    u64 r = 1;
    if (d > 0) {
      const u64 qd = checked_pow(b.prime, d);
      r = a % qd;
      require(r % b.prime != 0, "lift_from: a is not a unit");
    }
    x = crt_combine(x, mm, r % b.prime_power, b.prime_power);
    mm *= b.prime_power;
  }
  return modulus_ == 1 ? 0 : x;
}

// ------------------------------------------------------------- AbelianField

AbelianField::AbelianField(u64 modulus, const std::vector<u64>& generators)
    : group_(std::make_shared<UnitGroup>(modulus)),
      fixing_(Lattice::scaled_identity(IntVec{}))
{
  std::vector<IntVec> rows;
  for (u64 g : generators)
    rows.push_back(group_->log(g % modulus));
  for (std::size_t i = 0; i < group_->rank(); ++i)
    rows.push_back(unit_vector(group_->rank(), i, group_->orders()[i]));
  fixing_ = Lattice::from_generators(group_->rank(), std::move(rows));
}

AbelianField::AbelianField(std::shared_ptr<const UnitGroup> group, Lattice fixing)
    : group_(std::move(group)), fixing_(std::move(fixing))
{
  require(fixing_.rank() == group_->rank(), "fixing lattice rank mismatch");
  require(fixing_.contains(group_->full_lattice()),
          "fixing lattice must contain the relations of (Z/f)^x");
}

AbelianField AbelianField::rationals() { return AbelianField(1, {}); }

AbelianField AbelianField::cyclotomic(u64 m) { return AbelianField(m, {}); }

std::vector<u64> AbelianField::generators() const
{
  std::vector<u64> out;
  for (const auto& row : fixing_.basis()) {
    const u64 x = group_->exp(row);
    if (x != 1 % modulus())
      out.push_back(x);
  }
  return out;
}

u64 AbelianField::degree() const { return to_u64(fixing_.index()); }

bool AbelianField::fixes(u64 a) const { return fixing_.contains(group_->log(a % modulus())); }

std::vector<u64> AbelianField::fixing_elements() const
{
  require(modulus() <= 1'000'000, "fixing_elements only enumerates small moduli");
  std::vector<u64> out;
  if (modulus() == 1)
    return {0};
  for (u64 a = 1; a < modulus(); ++a)
    if (std::gcd(a, modulus()) == 1 && fixes(a))
      out.push_back(a);
  return out;
}

u64 AbelianField::conductor() const
{
  u64 f0 = 1;
  for (const auto& b : group_->blocks()) {
    int depth = 0;
    for (; depth <= b.exponent; ++depth) {
      const auto ker = group_->congruence_kernel(b, depth);
      if (std::all_of(ker.begin(), ker.end(), [&](const IntVec& v) { return fixing_.contains(v); }))
        break;
    }
    f0 *= checked_pow(b.prime, depth);
  }
  return f0;
}

AbelianField AbelianField::at_conductor() const
{
  const u64 f0 = conductor();
  if (f0 == modulus())
    return *this;
  std::vector<u64> gens;
  for (const auto& row : fixing_.basis())
    gens.push_back(group_->exp(row) % f0);
  return AbelianField(f0, gens);
}

AbelianField AbelianField::lifted(u64 M) const
{
  require(M % modulus() == 0, "lifted: target modulus must be a multiple of f");
  if (M == modulus())
    return *this;
  auto big = std::make_shared<UnitGroup>(M);
  std::vector<IntVec> rows;
  for (const auto& row : fixing_.basis())
    rows.push_back(big->log(big->lift_from(group_->exp(row), modulus())));
  for (const auto& b : big->blocks()) {
    const int d = modulus() % b.prime == 0 ? valuation(modulus(), b.prime) : 0;
    for (auto& v : big->congruence_kernel(b, d))
      rows.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < big->rank(); ++i)
    rows.push_back(unit_vector(big->rank(), i, big->orders()[i]));
  auto lat = Lattice::from_generators(big->rank(), std::move(rows));
  return AbelianField(std::move(big), std::move(lat));
}

AbelianField AbelianField::intersect_cyclotomic(u64 m) const
{
  require(m >= 1, "intersect_cyclotomic: m must be positive");
  const u64 g = std::gcd(modulus(), m);
  std::vector<IntVec> rows = fixing_.basis();
  for (const auto& b : group_->blocks()) {
    const int d = g % b.prime == 0 ? valuation(g, b.prime) : 0;
    for (auto& v : group_->congruence_kernel(b, d))
      rows.push_back(std::move(v));
  }
  return AbelianField(group_, Lattice::from_generators(group_->rank(), std::move(rows)));
}

std::vector<u64> AbelianField::fixing_group_in(u64 m) const
{
  require(m >= 2, "fixing_group_in: m must be at least 2");
  const AbelianField meet = intersect_cyclotomic(m);
  std::vector<u64> out;
  for (u64 a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1 && meet.fixes(group_->lift_from(a, m)))
      out.push_back(a);
  return out;
}

bool AbelianField::is_subfield_of(const AbelianField& other) const
{
  const u64 M = lcm_checked(modulus(), other.modulus());
  return lifted(M).fixing_.contains(other.lifted(M).fixing_);
}

AbelianField AbelianField::compositum(const AbelianField& other) const
{
  const u64 M = lcm_checked(modulus(), other.modulus());
  AbelianField a = lifted(M);
  AbelianField b = other.lifted(M);
  return AbelianField(a.group_, a.fixing_.intersect(b.fixing_));
}

bool operator==(const AbelianField& a, const AbelianField& b)
{
  const u64 M = lcm_checked(a.modulus(), b.modulus());
  return a.lifted(M).fixing_ == b.lifted(M).fixing_;
}

IntVec AbelianField::class_of(u64 x) const { return fixing_.reduce(group_->log(x % modulus())); }

FrobeniusClass AbelianField::frobenius_class(u64 l) const
{
  const u64 f0 = conductor();
  require(std::gcd(l, f0) == 1,
          "frobenius_class: " + std::to_string(l) + " ramifies (conductor " + std::to_string(f0) + ")");
  const AbelianField base = at_conductor();
  IntVec rep = base.class_of(l % std::max<u64>(f0, 1));
  const bool trivial =
      std::all_of(rep.begin(), rep.end(), [](const mpz_class& x) { return x == 0; });
  return {f0, std::move(rep), trivial};
}

AbelianField AbelianField::inertia_field(u64 p) const
{
  std::vector<IntVec> rows = fixing_.basis();
  for (const auto& b : group_->blocks())
    if (b.prime == p)
      for (auto& v : group_->block_generators(b))
        rows.push_back(std::move(v));
  return AbelianField(group_, Lattice::from_generators(group_->rank(), std::move(rows)));
}

std::vector<AbelianField> AbelianField::index_p_subfields(u64 p) const
{
  require(is_prime(p), "index_p_subfields: p must be prime");
  const std::size_t r = group_->rank();
  // Functionals c in F_p^r killing every basis row of the fixing lattice.
  std::vector<std::vector<u64>> m;
  for (const auto& row : fixing_.basis()) {
    std::vector<u64> v(r);
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class x = row[i] % mpz_class(static_cast<unsigned long>(p));
      if (x < 0)
        x += static_cast<unsigned long>(p);
      v[i] = to_u64(x);
    }
    m.push_back(std::move(v));
  }
  // Row reduce, then read off a null-space basis.
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t col = 0; col < r && top < m.size(); ++col) {
    std::size_t sel = m.size();
    for (std::size_t i = top; i < m.size(); ++i)
      if (m[i][col]) {
        sel = i;
        break;
      }
    if (sel == m.size())
      continue;
    std::swap(m[top], m[sel]);
    const u64 inv = inverse_mod(m[top][col], p);
    for (auto& x : m[top])
      x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == top || m[i][col] == 0)
        continue;
      const u64 f = m[i][col];
      for (std::size_t j = 0; j < r; ++j)
        m[i][j] = (m[i][j] + p - mulmod(f, m[top][j], p)) % p;
    }
    pivots.push_back(col);
    ++top;
  }
  std::vector<std::vector<u64>> kernel;
  for (std::size_t free = 0; free < r; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
      continue;
    std::vector<u64> c(r, 0);
    c[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      c[pivots[i]] = (p - m[i][free]) % p;
    kernel.push_back(std::move(c));
  }
  // Projective points of the kernel: coefficient tuples with leading 1.
  std::vector<AbelianField> out;
  const std::size_t s = kernel.size();
  for (std::size_t lead = 0; lead < s; ++lead) {
    const std::size_t tail = s - lead - 1;
    const u64 count = checked_pow(p, static_cast<int>(tail));
    for (u64 t = 0; t < count; ++t) {
      std::vector<u64> coeff(s, 0);
      coeff[lead] = 1;
      u64 rest = t;
      for (std::size_t j = s; j-- > lead + 1;) {
        coeff[j] = rest % p;
        rest /= p;
      }
      std::vector<u64> c(r, 0);
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < r; ++i)
          c[i] = (c[i] + mulmod(coeff[j], kernel[j][i], p)) % p;
      out.emplace_back(group_, hyperplane_lattice(c, p));
    }
  }
  return out;
}

nlohmann::json AbelianField::to_json() const
{
  return {{"modulus", modulus()}, {"generators", generators()}};
}

AbelianField AbelianField::from_json(const nlohmann::json& j)
{
  return AbelianField(j.at("modulus").get<u64>(), j.at("generators").get<std::vector<u64>>());
}

// ------------------------------------------------------------------- towers

AbelianField cyclotomic_zp_layer(u64 p, int n)
{
  require(p > 2 && is_prime(p) && n >= 0, "Z_p-layer needs an odd prime and n >= 0");
  auto group = std::make_shared<UnitGroup>(checked_pow(p, n + 1));
  const std::size_t r = group->rank();
  auto lat = Lattice::from_generators(
      r, {unit_vector(r, 0, static_cast<unsigned long>(checked_pow(p, n))), unit_vector(r, 0, group->orders()[0])});
  return AbelianField(std::move(group), std::move(lat));
}

AbelianField tower_layer(const AbelianField& K, u64 p, int n)
{
  return K.compositum(cyclotomic_zp_layer(p, n));
}

AbelianField first_tower_layer(const AbelianField& F, u64 p)
{
  const u64 d = F.degree();
  for (int n = 1; n < 40; ++n) {
    AbelianField L = F.compositum(cyclotomic_zp_layer(p, n));
    if (L.degree() > d) {
      if (L.degree() != d * p)
        throw CheckFailure("first_tower_layer: unexpected degree jump");
      return L;
    }
  }
  throw PrecisionError("first_tower_layer: modulus range exhausted");
}

InertiaStabilization inertia_stabilization(const AbelianField& K, u64 p, int max_n)
{
  require(max_n >= 0, "max_n must be non-negative");
  std::vector<AbelianField> layers;
  for (int n = 0; n <= max_n; ++n)
    layers.push_back(tower_layer(K, p, n).inertia_field(p));
  int n0 = max_n;
  while (n0 > 0 && layers[static_cast<std::size_t>(n0 - 1)] == layers.back())
    --n0;
  return {n0, layers.back()};
}

// -------------------------------------------------------- counterexample K

std::vector<std::array<u64, 2>> projective_line_directions(u64 p)
{
  std::vector<std::array<u64, 2>> dirs;
  for (u64 t = 0; t < p; ++t)
    dirs.push_back({1, t});
  dirs.push_back({0, 1});
  return dirs;
}

std::array<u64, 2> CounterexampleField::galois_image(u64 x) const
{
  std::array<u64, 2> out{0, 0};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const u64 l = primes[i];
    const u64 chi = discrete_log(primitive_roots[i], x % l, l - 1, l) % p;
    out[0] = (out[0] + chi * vectors[i][0]) % p;
    out[1] = (out[1] + chi * vectors[i][1]) % p;
  }
  return out;
}

nlohmann::json CounterexampleField::to_json() const
{
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : subfields)
    subs.push_back(s.to_json());
  nlohmann::json vecs = nlohmann::json::array();
  for (const auto& v : vectors)
    vecs.push_back({v[0], v[1]});
  return {{"p", p},
          {"primes", primes},
          {"primitive_roots", primitive_roots},
          {"character_vectors", vecs},
          {"field", field.to_json()},
          {"subfields", subs}};
}

CounterexampleField build_counterexample_field(const std::vector<u64>& primes, u64 p)
{
  require(p > 2 && is_prime(p), "p must be an odd prime");
  require(primes.size() == p + 1, "need exactly p+1 primes");
  u64 f = 1;
  for (u64 l : primes) {
    require(is_prime(l) && l != p && l % p == 1, "tuple entries must be primes = 1 mod p");
    require<PrecisionError>(f <= (u64{1} << 62) / l, "conductor overflow");
    f *= l;
  }
  auto group = std::make_shared<UnitGroup>(f);
  const std::size_t r = group->rank();
  require(r == primes.size(), "tuple primes must be distinct");

  // Coordinate of each tuple prime in the unit group.
  std::vector<std::size_t> coord(primes.size());
  std::vector<u64> roots(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (const auto& b : group->blocks())
      if (b.prime == primes[i]) {
        coord[i] = b.first_coord;
        roots[i] = b.generator;
      }

  // One nonzero vector per line, each line used once: every subfield K^j then
  // omits exactly the prime l_j from its conductor.
  const auto lines = projective_line_directions(p);
  std::vector<std::array<u64, 2>> vecs;
  std::vector<bool> used(lines.size(), false);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::size_t pick = lines.size();
    for (std::size_t j = 0; j < lines.size(); ++j)
      if (!used[j]) {
        pick = j;
        break;
      }
    if (pick == lines.size())
      throw CheckFailure("internal error: no vector assignment exists");
    used[pick] = true;
    vecs.push_back(lines[pick]);
  }

  auto functional = [&](auto&& weight) {
    std::vector<u64> c(r, 0);
    for (std::size_t i = 0; i < primes.size(); ++i)
      c[coord[i]] = weight(vecs[i]) % p;
    return c;
  };
  const Lattice k_lat =
      hyperplane_lattice(functional([](const auto& v) { return v[0]; }), p)
          .intersect(hyperplane_lattice(functional([](const auto& v) { return v[1]; }), p));
  AbelianField K(group, k_lat);

  std::vector<AbelianField> subs;
  for (std::size_t j = 0; j < primes.size(); ++j) {
    const auto dir = vecs[j];
    // lambda(x, y) = a y - b x vanishes exactly on the line through (a, b).
    subs.emplace_back(group, hyperplane_lattice(functional([&](const auto& v) {
                                                  return (dir[0] * v[1] + (p - dir[1]) * v[0]) % p;
                                                }),
                                                p));
  }

  CounterexampleField out{p, primes, roots, vecs, K, subs};

  // Condition 1: squarefree conductor and pairwise p-th power residues.
  if (K.conductor() != f)
    throw CheckFailure("condition 1 violated: cond(K) != prod l_i");
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = 0; j < primes.size(); ++j)
      if (i != j && !pth_power_residue(static_cast<i64>(primes[i]), primes[j], p))
        throw CheckFailure("condition 1 violated: " + std::to_string(primes[i]) +
                           " is not a p-th power mod " + std::to_string(primes[j]));
  // Condition 2: Gal(K/Q) = (Z/p)^2.
  if (K.degree() != p * p)
    throw CheckFailure("condition 2 violated: [K:Q] != p^2");
  for (std::size_t i = 0; i < r; ++i)
    if (!k_lat.contains(unit_vector(r, i, static_cast<unsigned long>(p))))
      throw CheckFailure("condition 2 violated: Gal(K/Q) has exponent > p");
  // Condition 3: the p+1 subfields and their conductors.
  const auto enumerated = K.index_p_subfields(p);
  if (enumerated.size() != p + 1)
    throw CheckFailure("condition 3 violated: K does not have p+1 subfields of degree p");
  for (std::size_t j = 0; j < subs.size(); ++j) {
    if (subs[j].degree() != p || !subs[j].is_subfield_of(K))
      throw CheckFailure("condition 3 violated: K^j is not a degree-p subfield");
    if (subs[j].conductor() != f / primes[j])
      throw CheckFailure("condition 3 violated: cond(K^" + std::to_string(j + 1) + ") = " +
                         std::to_string(subs[j].conductor()));
    if (std::count(enumerated.begin(), enumerated.end(), subs[j]) != 1)
      throw CheckFailure("condition 3 violated: K^j missing from the subfield lattice");
  }
  // Condition 4: Frob(l_i) trivial in Gal(K^i/Q).
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (!subs[i].frobenius_class(primes[i]).trivial)
      throw CheckFailure("condition 4 violated: Frobenius of " + std::to_string(primes[i]) +
                         " is nontrivial on K^" + std::to_string(i + 1));
  return out;
}

} // namespace sinnott
