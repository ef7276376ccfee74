#pragma once

// Word-size modular arithmetic shared by every layer: Miller-Rabin,
// factorisation by trial division, primitive roots and discrete logs.

#include <cstdint>
#include <utility>
#include <vector>

namespace sinnott {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 mod);

/// Reduce a signed value into [0, m).
inline u64 reduce_signed(i64 a, u64 m)
{
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Inverse of a modulo m; throws InvalidArgument if gcd(a, m) != 1.
u64 inverse_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin for all 64-bit inputs (first twelve prime bases).
bool is_prime(u64 n);

/// Prime factorisation as (prime, exponent) pairs in increasing order.
std::vector<std::pair<u64, int>> factorize(u64 n);

u64 euler_phi(u64 n);

/// Exponent of the prime q in n (n != 0).
int valuation(u64 n, u64 q);

/// Smallest generator of the cyclic group (Z/q^e)^x, q an odd prime.
u64 primitive_root_prime_power(u64 q, int e);

/// x with base^x = target (mod mod), 0 <= x < order; base must have the given
/// order. Baby-step giant-step; throws CheckFailure when no solution exists.
u64 discrete_log(u64 base, u64 target, u64 order, u64 mod);

/// Integer power that throws on 64-bit overflow.
u64 checked_pow(u64 base, int exp);

} // namespace sinnott
