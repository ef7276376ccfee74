#include "sinnott/modular.hpp"

#include "sinnott/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

namespace sinnott {

u64 powmod(u64 base, u64 exp, u64 mod)
{
  if (mod == 1)
    return 0;
  u64 result = 1;
  base %= mod;
  while (exp) {
    if (exp & 1)
      result = mulmod(result, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

u64 inverse_mod(u64 a, u64 m)
{
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1)
    throw InvalidArgument("inverse_mod: " + std::to_string(a) + " is not a unit modulo " +
                          std::to_string(m));
  return reduce_signed(t, m);
}

bool is_prime(u64 n)
{
  if (n < 2)
    return false;
  static constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 b : bases) {
    if (n == b)
      return true;
    if (n % b == 0)
      return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n)
{
  std::vector<std::pair<u64, int>> out;
  for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q)
      continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1)
    out.emplace_back(n, 1);
  return out;
}

u64 euler_phi(u64 n)
{
  u64 phi = n;
  for (auto [q, e] : factorize(n))
    phi = phi / q * (q - 1);
  return phi;
}

int valuation(u64 n, u64 q)
{
  require(n != 0, "valuation of zero");
  int v = 0;
  while (n % q == 0) {
    n /= q;
    ++v;
  }
  return v;
}

u64 checked_pow(u64 base, int exp)
{
  u64 r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base)
      throw PrecisionError("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

u64 primitive_root_prime_power(u64 q, int e)
{
  require(q > 2 && is_prime(q) && e >= 1, "primitive root needs an odd prime power");
  const auto factors = factorize(q - 1);
  u64 g = 2;
  for (;; ++g) {
    bool ok = true;
    for (auto [r, _] : factors)
      if (powmod(g, (q - 1) / r, q) == 1) {
        ok = false;
        break;
      }
    if (ok)
      break;
  }
  // A root mod q generates mod q^2 (hence all q^e) unless g^(q-1) = 1 mod q^2.
  if (e >= 2 && powmod(g, q - 1, q * q) == 1)
    g += q;
  return g;
}

u64 discrete_log(u64 base, u64 target, u64 order, u64 mod)
{
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order)))) + 1;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.try_emplace(cur, j);
    cur = mulmod(cur, base, mod);
  }
  const u64 giant = powmod(inverse_mod(base, mod), m, mod);
  u64 gamma = target % mod;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) {
      u64 x = i * m + it->second;
      if (x < order || order == 0)
        return x % order;
    }
    gamma = mulmod(gamma, giant, mod);
  }
  throw CheckFailure("discrete_log: target is not in the subgroup generated by base");
}

} // namespace sinnott
