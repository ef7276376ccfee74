#pragma once

#include "sinnott/modular.hpp"

#include <compare>
#include <string>

namespace sinnott {

/// Default p-adic precision used by the tools.
inline constexpr int kDefaultPrecision = 8;

/// An element of Z/p^k standing for a p-adic integer known to precision k.
/// p is an odd prime and p^k stays below 2^62 so products fit in 128 bits.
class PadicInt {
public:
  PadicInt(u64 p, int k, i64 value);
  static PadicInt from_unsigned(u64 p, int k, u64 value);

  u64 prime() const { return p_; }
  int precision() const { return k_; }
  u64 value() const { return value_; }
  u64 modulus() const { return mod_; }

  /// p-adic valuation, or precision() for zero.
  int valuation() const;
  bool is_unit() const { return value_ % p_ != 0; }

  PadicInt reduced(int k) const;
  PadicInt inverse() const;
  PadicInt pow(u64 e) const;

  friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
  PadicInt operator-() const;

  friend bool operator==(const PadicInt&, const PadicInt&) = default;

  std::string to_string() const;

private:
  PadicInt(u64 p, int k, u64 mod, u64 value) : p_(p), k_(k), mod_(mod), value_(value) {}

  u64 p_;
  int k_;
  u64 mod_;
  u64 value_;
};

/// Euler's criterion: l is a p-th power modulo the prime q (q = 1 mod p).
bool pth_power_residue(i64 l, u64 q, u64 p);

/// omega(a): the (p-1)-th root of unity in Z/p^k congruent to a mod p.
PadicInt teichmuller(i64 a, u64 p, int k);

/// Logarithm of a principal unit u = 1 (mod p), same precision as u.
PadicInt padic_log(const PadicInt& u);

/// c_l with (1+p)^{c_l} = l / omega(l) in Z_p, returned modulo p^k.
/// This is the exponent of the Frobenius at l in Gal(Q_infty/Q) for the
/// topological generator acting on p-power roots of unity by 1+p.
PadicInt frobenius_exponent(u64 l, u64 p, int k);

} // namespace sinnott
