#pragma once
// Truncated Iwasawa algebras (Z/p^k)[T]/(f(T)) and group rings over them for
// a finite abelian G.  f is T^d ("infinite level", power series cut at T^d)
// or (1+T)^{p^n} - 1 (finite level n, the group ring of Gamma/Gamma^{p^n}
// with gamma = 1+T).

#include "sinnott/modular.hpp"
#include "sinnott/padic.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sinnott {

using Subgroup = std::vector<std::uint32_t>; // sorted element indices

/// Product of cyclic groups Z/n_0 x ... x Z/n_{r-1}; element index
/// x_0 + n_0 x_1 + n_0 n_1 x_2 + ...
class FiniteAbelianGroup {
public:
  explicit FiniteAbelianGroup(std::vector<u64> orders);

  const std::vector<u64>& orders() const { return orders_; }
  std::uint32_t size() const { return size_; }
  std::vector<u64> digits(std::uint32_t g) const;
  std::uint32_t index(const std::vector<u64>& digits) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * size_ + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t pow(std::uint32_t a, i64 e) const;
  std::uint64_t element_order(std::uint32_t a) const;

  /// Subgroup generated by the given elements.
  Subgroup closure(const std::vector<std::uint32_t>& gens) const;
  Subgroup trivial() const { return {0}; }
  Subgroup whole() const;
  /// All subgroups of order p, each listed once, ordered by smallest generator.
  std::vector<Subgroup> order_p_subgroups(u64 p) const;
  /// coset_of[g] for G/S, cosets numbered by smallest element.
  std::vector<std::uint32_t> coset_index(const Subgroup& s) const;

  std::string element_name(std::uint32_t g) const;
  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b)
  {
    return a.orders_ == b.orders_;
  }

private:
  std::vector<u64> orders_;
  std::uint32_t size_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
};

class RingSpec {
public:
  enum class Flavor { Truncated, FiniteLevel };

  /// (Z/p^k)[T]/(T^d)[G].
  static std::shared_ptr<const RingSpec> truncated(u64 p, int k, int d, std::vector<u64> group = {});
  /// (Z/p^k)[T]/((1+T)^{p^n} - 1)[G].
  static std::shared_ptr<const RingSpec> finite_level(u64 p, int k, int n,
                                                      std::vector<u64> group = {});

  u64 prime() const { return p_; }
  int precision() const { return k_; }
  u64 modulus() const { return mod_; }
  Flavor flavor() const { return flavor_; }
  /// Degree of f; T^t for t < degree() is a basis of the coefficient ring.
  int degree() const { return degree_; }
  /// Level n for the finite flavor, -1 otherwise.
  int level() const { return level_; }
  const FiniteAbelianGroup& group() const { return group_; }
  std::size_t dimension() const { return static_cast<std::size_t>(degree_) * group_.size(); }

  /// Reduce a polynomial of degree < 2*degree()-1 modulo (p^k, f), in place;
  /// the vector is resized to degree().
  void reduce_poly(std::vector<u64>& poly) const;
  /// Same ring with a different group.
  std::shared_ptr<const RingSpec> with_group(std::vector<u64> group) const;
  /// T^d truncation only: the same ring with smaller d.
  std::shared_ptr<const RingSpec> with_degree(int d) const;

  std::string describe() const;
  nlohmann::json modulus_json() const;
  friend bool operator==(const RingSpec& a, const RingSpec& b);

private:
  RingSpec(u64 p, int k, Flavor flavor, int degree, int level, std::vector<u64> group);

  u64 p_;
  int k_;
  u64 mod_;
  Flavor flavor_;
  int degree_;
  int level_;
  FiniteAbelianGroup group_;
  std::vector<u64> tail_; // finite level: T^D = sum_j tail_[j] T^j
};

using SpecPtr = std::shared_ptr<const RingSpec>;

/// Element of R = (Z/p^k)[T]/(f)[G]: coefficient of T^t g at index t*|G| + g.
class GroupRingElt {
public:
  explicit GroupRingElt(SpecPtr spec);
  static GroupRingElt zero(SpecPtr spec) { return GroupRingElt(std::move(spec)); }
  static GroupRingElt scalar(SpecPtr spec, i64 c);
  static GroupRingElt group_element(SpecPtr spec, std::uint32_t g);
  static GroupRingElt T(SpecPtr spec);
  /// 1 + T.
  static GroupRingElt gamma(SpecPtr spec);
  /// The polynomial sum_t coeffs[t] T^t (times the identity of G).
  static GroupRingElt polynomial(SpecPtr spec, const std::vector<i64>& coeffs);

  const SpecPtr& spec() const { return spec_; }
  const std::vector<u64>& coefficients() const { return c_; }
  u64 coefficient(int t, std::uint32_t g) const { return c_[t * spec_->group().size() + g]; }
  void set_coefficient(int t, std::uint32_t g, u64 v);
  bool is_zero() const;
  /// Image under the augmentation G -> 1 (a polynomial in T).
  std::vector<u64> augmentation() const;
  /// Coefficients of T^0, one per group element.
  std::vector<u64> constant_terms() const;

  GroupRingElt pow(u64 e) const;
  GroupRingElt scaled(u64 c) const;

  friend GroupRingElt operator+(const GroupRingElt& a, const GroupRingElt& b);
  friend GroupRingElt operator-(const GroupRingElt& a, const GroupRingElt& b);
  friend GroupRingElt operator*(const GroupRingElt& a, const GroupRingElt& b);
  GroupRingElt operator-() const;
  friend bool operator==(const GroupRingElt& a, const GroupRingElt& b);

  /// Truncated flavor: reduce to T^d (d <= current degree).
  GroupRingElt truncated(int d) const;
  /// Finite flavor: image in the level-n ring, n <= current level.
  GroupRingElt projected(const SpecPtr& lower) const;
  /// Same coefficients read in a ring with larger f-degree, e.g. the lift
  /// of a level-n element to level n+1 by its canonical polynomial.
  GroupRingElt lifted(const SpecPtr& upper) const;

  nlohmann::json to_json() const;
  static GroupRingElt from_json(const nlohmann::json& j);
  std::string to_string() const;

private:
  SpecPtr spec_;
  std::vector<u64> c_;
};

/// 1 - (1+T)^{-c}.  Over T^d the exponent is only needed modulo
/// p^{k + floor(log_p(d-1))}, so c must carry that much precision.
GroupRingElt one_minus_frob_inv(const PadicInt& c, const SpecPtr& spec);
/// Precision of c needed by one_minus_frob_inv over the given ring.
int frobenius_precision_needed(const RingSpec& spec);

/// x / T for x with zero constant terms; result lives over T^{d-1}.
GroupRingElt divide_by_T(const GroupRingElt& x);

/// sum_{h in H} h.
GroupRingElt trace_element(const Subgroup& h, const SpecPtr& spec);
/// sum_{j < n} g^j.
GroupRingElt geometric_sum(const GroupRingElt& g, u64 n);

/// Exact check of sum_{|H| = p} Tr_H - Tr_G = p in Z[G] for G = (Z/p)^2.
/// Throws InvalidArgument for any other shape of G.
bool formal_identity_check(u64 p, const SpecPtr& spec);
/// sum_{|H| = p} Tr_H - Tr_G as exact integer coefficients over Z[G].
std::vector<i64> formal_identity_defect(const FiniteAbelianGroup& g, u64 p);

/// Some coefficient is a unit mod p.
bool is_prime_to_p(const GroupRingElt& x);

} // namespace sinnott
