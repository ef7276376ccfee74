#include "sinnott/cyclotomic.hpp"

#include "sinnott/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace sinnott {

const std::vector<i64>& cyclotomic_polynomial(u64 m)
{
  static std::mutex mutex;
  static std::map<u64, std::vector<i64>> cache;
  require(m >= 1, "cyclotomic polynomial of index 0");
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end())
      return it->second;
  }
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, exact division by monic factors.
  std::vector<i64> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (u64 d = 1; d < m; ++d) {
    if (m % d)
      continue;
    const auto& den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<i64> quo(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      const i64 c = num[i];
      quo[i - dd] = c;
      if (c == 0)
        continue;
      for (std::size_t j = 0; j <= dd; ++j)
        num[i - dd + j] -= c * den[j];
    }
    num = std::move(quo);
  }
  std::lock_guard lock(mutex);
  return cache.emplace(m, std::move(num)).first->second;
}

CycloElt CycloElt::from_coefficients(u64 m, std::vector<mpz_class> v)
{
  const auto& phi = cyclotomic_polynomial(m);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = v.size(); i-- > deg;) {
    if (v[i] == 0)
      continue;
    const mpz_class c = v[i];
    for (std::size_t j = 0; j <= deg; ++j)
      if (phi[j] != 0)
        v[i - deg + j] -= c * phi[j];
  }
  v.resize(deg);
  return CycloElt(m, std::move(v));
}

CycloElt CycloElt::zero(u64 m) { return from_coefficients(m, {}); }

CycloElt CycloElt::integer(u64 m, const mpz_class& n) { return from_coefficients(m, {n}); }

CycloElt CycloElt::zeta_power(u64 m, i64 a)
{
  std::vector<mpz_class> v(m, 0);
  v[reduce_signed(a, m)] = 1;
  return from_coefficients(m, std::move(v));
}

CycloElt CycloElt::one_minus_zeta(u64 m, i64 a)
{
  std::vector<mpz_class> v(m, 0);
  v[0] += 1;
  v[reduce_signed(a, m)] -= 1;
  return from_coefficients(m, std::move(v));
}

bool CycloElt::is_zero() const
{
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c == 0; });
}

CycloElt operator+(const CycloElt& a, const CycloElt& b)
{
  require(a.m_ == b.m_, "cyclotomic operands live in different fields");
  auto c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] += b.coeffs_[i];
  return CycloElt(a.m_, std::move(c));
}

CycloElt operator-(const CycloElt& a, const CycloElt& b)
{
  require(a.m_ == b.m_, "cyclotomic operands live in different fields");
  auto c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] -= b.coeffs_[i];
  return CycloElt(a.m_, std::move(c));
}

CycloElt operator*(const CycloElt& a, const CycloElt& b)
{
  require(a.m_ == b.m_, "cyclotomic operands live in different fields");
  const std::size_t n = a.coeffs_.size();
  if (n == 0)
    return a;
  std::vector<mpz_class> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0)
      continue;
    for (std::size_t j = 0; j < n; ++j)
      mpz_addmul(prod[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
  }
  return CycloElt::from_coefficients(a.m_, std::move(prod));
}

CycloElt CycloElt::embed(u64 M) const
{
  require(M % m_ == 0, "embed: target modulus must be a multiple");
  const u64 step = M / m_;
  std::vector<mpz_class> v(M, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    v[(i * step) % M] += coeffs_[i];
  return from_coefficients(M, std::move(v));
}

std::string CycloElt::to_string() const
{
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i)
      s += ", ";
    s += coeffs_[i].get_str();
  }
  return s + "] mod Phi_" + std::to_string(m_);
}

CycloElt galois_apply(i64 a, const CycloElt& x)
{
  const u64 m = x.modulus();
  const u64 ar = reduce_signed(a, m);
  require(std::gcd(ar, m) == 1 || m == 1, "galois_apply: a must be prime to m");
  std::vector<mpz_class> v(m, 0);
  const auto& c = x.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i)
    v[mulmod(i, ar, m)] += c[i];
  return CycloElt::from_coefficients(m, std::move(v));
}

std::vector<u64> unit_subgroup(u64 m, const std::vector<u64>& generators)
{
  require(m >= 1, "unit_subgroup: modulus must be positive");
  std::set<u64> seen{1 % m};
  std::vector<u64> frontier{1 % m};
  while (!frontier.empty()) {
    const u64 x = frontier.back();
    frontier.pop_back();
    for (u64 g : generators) {
      require(std::gcd(g % m, m) == 1 || m == 1, "subgroup generator is not a unit");
      const u64 y = mulmod(x, g % m, m);
      if (seen.insert(y).second)
        frontier.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

CycloElt relative_norm(const CycloElt& x, const std::vector<u64>& generators)
{
  CycloElt acc = CycloElt::integer(x.modulus(), 1);
  for (u64 a : unit_subgroup(x.modulus(), generators))
    acc *= galois_apply(static_cast<i64>(a), x);
  return acc;
}

CycloElt epsilon_number(const AbelianField& K, u64 m, i64 a)
{
  require(m > 1, "epsilon_number: m must exceed 1");
  require(reduce_signed(a, m) != 0, "epsilon_number: m divides a, so 1 - zeta_m^a = 0");
  const CycloElt base = CycloElt::one_minus_zeta(m, a);
  CycloElt acc = CycloElt::integer(m, 1);
  for (u64 h : K.fixing_group_in(m))
    acc *= galois_apply(static_cast<i64>(h), base);
  return acc;
}

CycloElt epsilon_field(const AbelianField& F)
{
  const u64 f = F.conductor();
  require(f > 1, "eps_F is undefined for F = Q");
  return epsilon_number(F.at_conductor(), f, 1);
}

bool verify_distribution(u64 r, u64 s, u64 max_conductor, bool corrupt)
{
  require(r > 2, "distribution relation needs r > 2");
  require(s > r && s % r == 0, "distribution relation needs r | s, s > r");
  require(s <= max_conductor, "conductor exceeds the configured cap");

  // Left side: norm from Q(zeta_s) to Q(zeta_r), group {a = 1 mod r}.
  const CycloElt base = CycloElt::one_minus_zeta(s, 1);
  CycloElt lhs = corrupt ? base : CycloElt::integer(s, 1);
  for (u64 a = 1; a < s; a += r)
    if (std::gcd(a, s) == 1)
      lhs *= galois_apply(static_cast<i64>(a), base);

  // Right side: expand prod_l (1 - sigma_l^{-1}) over subsets of the new primes.
  std::vector<u64> fresh;
  for (auto [l, e] : factorize(s))
    if (r % l)
      fresh.push_back(l);
  const CycloElt unit_r = CycloElt::one_minus_zeta(r, 1);
  CycloElt even = CycloElt::integer(r, 1);
  CycloElt odd = CycloElt::integer(r, 1);
  for (u64 mask = 0; mask < (u64{1} << fresh.size()); ++mask) {
    u64 prod = 1;
    for (std::size_t i = 0; i < fresh.size(); ++i)
      if (mask >> i & 1)
        prod = mulmod(prod, fresh[i] % r, r);
    const CycloElt conj = galois_apply(static_cast<i64>(inverse_mod(prod, r)), unit_r);
    if (std::popcount(mask) % 2 == 0)
      even *= conj;
    else
      odd *= conj;
  }
  return lhs * odd.embed(s) == even.embed(s);
}

DistributionSweep distribution_sweep(u64 max_s, bool corrupt)
{
  DistributionSweep out;
  for (u64 s = 4; s <= max_s; ++s)
    for (u64 r = 3; r < s; ++r)
      if (s % r == 0) {
        ++out.pairs;
        if (!verify_distribution(r, s, max_s, corrupt))
          out.failures.emplace_back(r, s);
      }
  return out;
}

NormTowerCheck verify_norm_tower(const AbelianField& F, u64 p, u64 max_conductor)
{
  require(p > 2 && is_prime(p), "p must be an odd prime");
  const u64 f = F.conductor();
  const AbelianField layer = first_tower_layer(F, p).at_conductor();
  const u64 f1 = layer.modulus();
  require(f1 <= max_conductor, "tower layer conductor exceeds the configured cap");

  const CycloElt eps1 = epsilon_field(layer);
  const AbelianField lower = F.lifted(f1);
  u64 step = 0;
  for (u64 b = 2; b < f1 && step == 0; ++b)
    if (std::gcd(b, f1) == 1 && lower.fixes(b) && !layer.fixes(b))
      step = b;
  if (step == 0)
    throw CheckFailure("verify_norm_tower: no generator of Gal(F_1/F) found");
  CycloElt norm = CycloElt::integer(f1, 1);
  u64 g = 1;
  for (u64 j = 0; j < p; ++j) {
    norm *= galois_apply(static_cast<i64>(g), eps1);
    g = mulmod(g, step, f1);
  }

  NormTowerCheck out{f, f1, f % p == 0, false};
  if (f == 1) {
    out.holds = norm == CycloElt::integer(f1, static_cast<unsigned long>(p));
  } else if (out.p_divides_f) {
    out.holds = norm == epsilon_field(F).embed(f1);
  } else {
    const CycloElt eps = epsilon_field(F);
    const CycloElt twisted = galois_apply(static_cast<i64>(inverse_mod(p % f, f)), eps);
    out.holds = norm * twisted.embed(f1) == eps.embed(f1);
  }
  return out;
}

} // namespace sinnott
