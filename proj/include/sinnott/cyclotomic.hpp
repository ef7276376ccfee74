#pragma once

// Exact arithmetic in Z[zeta_m] = Z[x]/Phi_m(x), Galois action, relative
// norms, the circular numbers eps_{K,m,a} and checks of the distribution
// relations between them.

#include "sinnott/abelian_field.hpp"
#include "sinnott/modular.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace sinnott {

/// Largest cyclotomic modulus the tools accept by default (degree <= 256).
inline constexpr u64 kDefaultMaxConductor = 512;

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<i64>& cyclotomic_polynomial(u64 m);

class CycloElt {
public:
  static CycloElt zero(u64 m);
  static CycloElt integer(u64 m, const mpz_class& n);
  /// zeta_m^a.
  static CycloElt zeta_power(u64 m, i64 a);
  /// 1 - zeta_m^a.
  static CycloElt one_minus_zeta(u64 m, i64 a);
  /// Reduce an arbitrary coefficient vector (any length) modulo Phi_m.
  static CycloElt from_coefficients(u64 m, std::vector<mpz_class> coeffs);

  u64 modulus() const { return m_; }
  std::size_t degree() const { return coeffs_.size(); }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  bool is_zero() const;

  friend CycloElt operator+(const CycloElt& a, const CycloElt& b);
  friend CycloElt operator-(const CycloElt& a, const CycloElt& b);
  friend CycloElt operator*(const CycloElt& a, const CycloElt& b);
  CycloElt& operator*=(const CycloElt& b) { return *this = *this * b; }

  friend bool operator==(const CycloElt&, const CycloElt&) = default;

  /// Image under the canonical embedding Z[zeta_m] -> Z[zeta_M], zeta_m = zeta_M^{M/m}.
  CycloElt embed(u64 M) const;

  std::string to_string() const;

private:
  CycloElt(u64 m, std::vector<mpz_class> coeffs) : m_(m), coeffs_(std::move(coeffs)) {}
  u64 m_;
  std::vector<mpz_class> coeffs_; // length phi(m), reduced mod Phi_m
};

/// sigma_a : zeta_m -> zeta_m^a; requires gcd(a, m) = 1.
CycloElt galois_apply(i64 a, const CycloElt& x);

/// Closure of the given units in (Z/m)^x, sorted.
std::vector<u64> unit_subgroup(u64 m, const std::vector<u64>& generators);

/// prod_{a in H} sigma_a(x), H generated by `generators` in (Z/m)^x.
CycloElt relative_norm(const CycloElt& x, const std::vector<u64>& generators);

/// eps_{K,m,a} = N_{Q(zeta_m), K cap Q(zeta_m)}(1 - zeta_m^a), in Z[zeta_m].
CycloElt epsilon_number(const AbelianField& K, u64 m, i64 a);

/// eps_F = eps_{F, cond F}.
CycloElt epsilon_field(const AbelianField& F);

/// N_{Q(zeta_s)/Q(zeta_r)}(1 - zeta_s) = prod_{l | s, l not | r} (1 - zeta_r)^{1 - sigma_l^{-1}},
/// checked exactly by cross-multiplication inside Z[zeta_s].  `corrupt` puts
/// one extra factor 1 - zeta_s on the left (negative control).
bool verify_distribution(u64 r, u64 s, u64 max_conductor = kDefaultMaxConductor,
                         bool corrupt = false);

struct DistributionSweep {
  std::size_t pairs = 0;
  std::vector<std::pair<u64, u64>> failures;
};

/// verify_distribution for every r | s with 2 < r < s <= max_s.
DistributionSweep distribution_sweep(u64 max_s, bool corrupt = false);

struct NormTowerCheck {
  u64 conductor;       // f
  u64 layer_conductor; // f_1
  bool p_divides_f;
  bool holds;
};

/// N_{F_1/F}(eps_{F_1}) against eps_F (p | f) or eps_F^{1 - sigma_p^{-1}} (p not | f).
/// For F = Q the level-0 value is p itself.
NormTowerCheck verify_norm_tower(const AbelianField& F, u64 p,
                                 u64 max_conductor = kDefaultMaxConductor);

} // namespace sinnott
