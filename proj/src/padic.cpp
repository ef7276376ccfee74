#include "sinnott/padic.hpp"

#include "sinnott/error.hpp"

#include <cmath>

namespace sinnott {

namespace {

u64 prime_power(u64 p, int k)
{
  require(k >= 1, "p-adic precision must be at least 1");
  u64 m = checked_pow(p, k);
  require<PrecisionError>(m < (u64{1} << 62), "p^k exceeds the supported 62-bit range");
  return m;
}

int floor_log(u64 n, u64 p)
{
  int r = 0;
  while (n >= p) {
    n /= p;
    ++r;
  }
  return r;
}

} // namespace

PadicInt::PadicInt(u64 p, int k, i64 value)
{
  require(p > 2 && is_prime(p), "p must be an odd prime");
  p_ = p;
  k_ = k;
  mod_ = prime_power(p, k);
  value_ = reduce_signed(value, mod_);
}

PadicInt PadicInt::from_unsigned(u64 p, int k, u64 value)
{
  PadicInt r(p, k, 0);
  r.value_ = value % r.mod_;
  return r;
}

int PadicInt::valuation() const
{
  if (value_ == 0)
    return k_;
  return sinnott::valuation(value_, p_);
}

PadicInt PadicInt::reduced(int k) const
{
  require<PrecisionError>(k <= k_, "cannot raise precision of a p-adic integer");
  return from_unsigned(p_, k, value_);
}

PadicInt PadicInt::inverse() const
{
  require(is_unit(), "inverse of a non-unit p-adic integer");
  return PadicInt(p_, k_, mod_, inverse_mod(value_, mod_));
}

PadicInt PadicInt::pow(u64 e) const { return PadicInt(p_, k_, mod_, powmod(value_, e, mod_)); }

namespace {
void same_ring(const PadicInt& a, const PadicInt& b)
{
  require(a.prime() == b.prime() && a.precision() == b.precision(),
          "p-adic operands live in different rings");
}
} // namespace

PadicInt operator+(const PadicInt& a, const PadicInt& b)
{
  same_ring(a, b);
  return PadicInt(a.p_, a.k_, a.mod_, (a.value_ + b.value_) % a.mod_);
}

PadicInt operator-(const PadicInt& a, const PadicInt& b)
{
  same_ring(a, b);
  return PadicInt(a.p_, a.k_, a.mod_, (a.value_ + a.mod_ - b.value_) % a.mod_);
}

PadicInt operator*(const PadicInt& a, const PadicInt& b)
{
  same_ring(a, b);
  return PadicInt(a.p_, a.k_, a.mod_, mulmod(a.value_, b.value_, a.mod_));
}

PadicInt PadicInt::operator-() const { return PadicInt(p_, k_, mod_, (mod_ - value_) % mod_); }

std::string PadicInt::to_string() const
{
  return std::to_string(value_) + " mod " + std::to_string(p_) + "^" + std::to_string(k_);
}

bool pth_power_residue(i64 l, u64 q, u64 p)
{
  require(p > 2 && is_prime(p), "p must be an odd prime");
  require(is_prime(q), "modulus q must be prime");
  require(q % p == 1, "Euler criterion needs q = 1 (mod p)");
  const u64 lr = reduce_signed(l, q);
  require(lr != 0, "l must be prime to q");
  return powmod(lr, (q - 1) / p, q) == 1;
}

PadicInt teichmuller(i64 a, u64 p, int k)
{
  PadicInt x(p, k, a);
  require(x.is_unit(), "Teichmuller lift of a multiple of p");
  // x -> x^p contracts towards the fixed point; k iterations suffice.
  for (;;) {
    PadicInt next = x.pow(p);
    if (next == x)
      return x;
    x = next;
  }
}

PadicInt padic_log(const PadicInt& u)
{
  const u64 p = u.prime();
  const int k = u.precision();
  require(u.value() % p == 1, "p-adic log needs u = 1 (mod p)");

  // Terms (u-1)^n/n have valuation >= n - floor(log_p n), nondecreasing in n.
  int last = 1;
  while (last - floor_log(static_cast<u64>(last), p) < k)
    ++last;
  const int extra = floor_log(static_cast<u64>(last), p);
  const int work_k = k + extra;
  const u64 work_mod = prime_power(p, work_k);
  const u64 mod = u.modulus();

  const u64 x = (u.value() + work_mod - 1) % work_mod;
  u64 xn = 1;
  u64 sum = 0;
  for (int n = 1; n < last; ++n) {
    xn = mulmod(xn, x, work_mod);
    const int e = valuation(static_cast<u64>(n), p);
    const u64 pe = checked_pow(p, e);
    // x^n is divisible by p^n >= p^e, so the quotient is exact mod p^(work_k - e) >= p^k.
    const u64 shifted = (xn / pe) % mod;
    const u64 cofactor = static_cast<u64>(n) / pe;
    u64 term = mulmod(shifted, inverse_mod(cofactor % mod, mod), mod);
    if (n % 2 == 0)
      term = (mod - term) % mod;
    sum = (sum + term) % mod;
  }
  return PadicInt::from_unsigned(p, k, sum);
}

PadicInt frobenius_exponent(u64 l, u64 p, int k)
{
  require(is_prime(l), "frobenius_exponent: l must be prime");
  require(l != p, "frobenius_exponent: l must differ from p");
  const int kk = k + 1;
  const PadicInt lp(p, kk, static_cast<i64>(l % checked_pow(p, kk)));
  const PadicInt principal = lp * teichmuller(static_cast<i64>(l % p), p, kk).inverse();
  const PadicInt log_l = padic_log(principal);
  const PadicInt log_gamma = padic_log(PadicInt(p, kk, static_cast<i64>(1 + p)));
  // Both logarithms are divisible by p; log(1+p)/p is a unit for odd p.
  const u64 num = log_l.value() / p;
  const u64 den = log_gamma.value() / p;
  const u64 mod = checked_pow(p, k);
  return PadicInt::from_unsigned(p, k, mulmod(num % mod, inverse_mod(den % mod, mod), mod));
}

} // namespace sinnott
