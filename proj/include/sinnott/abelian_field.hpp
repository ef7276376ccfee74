#pragma once

// Abelian number fields K inside Q(zeta_f), described by the subgroup
// H <= (Z/f)^x fixing K, so Gal(K/Q) = (Z/f)^x / H.  Subgroups are stored as
// lattices of discrete-log exponent vectors, which keeps moduli with
// 10^12-sized unit groups cheap.

#include "sinnott/lattice.hpp"
#include "sinnott/modular.hpp"

#include <json.hpp>

#include <array>
#include <memory>
#include <optional>
#include <vector>

namespace sinnott {

/// (Z/f)^x as a product of cyclic factors, one block per prime power of f.
class UnitGroup {
public:
  struct Block {
    u64 prime;
    int exponent;
    u64 prime_power;
    std::size_t first_coord;
    std::vector<u64> orders; // 0, 1 or 2 cyclic factors
    u64 generator;           // primitive root (odd primes) or 5 (powers of 2)
  };

  explicit UnitGroup(u64 modulus);

  u64 modulus() const { return modulus_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const IntVec& orders() const { return orders_; }
  u64 order() const;

  /// Exponent vector of a unit modulo f.
  IntVec log(u64 x) const;
  /// The unit with the given exponent vector (entries taken modulo orders).
  u64 exp(const IntVec& v) const;

  /// Generators of {x = 1 mod prime^depth} inside the block, as exponent vectors.
  std::vector<IntVec> congruence_kernel(const Block& b, int depth) const;
  /// Exponent vectors generating the whole block.
  std::vector<IntVec> block_generators(const Block& b) const;

  /// The unit mod f agreeing with a mod each prime power q^d dividing m
  /// (d the exponent of q in gcd(f, m)), and equal to 1 elsewhere.
  u64 lift_from(u64 a, u64 m) const;

  Lattice full_lattice() const { return Lattice::scaled_identity(orders_); }

private:
  u64 modulus_;
  std::vector<Block> blocks_;
  IntVec orders_;
};

class AbelianField;

/// Class of a Frobenius element in Gal(K/Q), computed at the conductor.
struct FrobeniusClass {
  u64 modulus;          // conductor of K
  IntVec representative; // canonical exponent vector modulo the fixing lattice
  bool trivial;

  friend bool operator==(const FrobeniusClass&, const FrobeniusClass&) = default;
};

class AbelianField {
public:
  /// Fixed field of the subgroup of (Z/f)^x generated by `generators`.
  AbelianField(u64 modulus, const std::vector<u64>& generators);
  AbelianField(std::shared_ptr<const UnitGroup> group, Lattice fixing);

  static AbelianField rationals();
  static AbelianField cyclotomic(u64 m);

  u64 modulus() const { return group_->modulus(); }
  const UnitGroup& unit_group() const { return *group_; }
  const Lattice& fixing_lattice() const { return fixing_; }

  /// Canonical generators of H (one per Hermite basis row, trivial ones dropped).
  std::vector<u64> generators() const;
  u64 degree() const;
  bool fixes(u64 a) const;
  /// Elements of H, only for small moduli.
  std::vector<u64> fixing_elements() const;

  u64 conductor() const;
  AbelianField at_conductor() const;
  /// The same field viewed inside Q(zeta_M), f | M.
  AbelianField lifted(u64 M) const;

  /// K intersected with Q(zeta_m), still described at modulus f.
  AbelianField intersect_cyclotomic(u64 m) const;
  /// Units a mod m with sigma_a fixing K cap Q(zeta_m), i.e. the group of
  /// Q(zeta_m) over K cap Q(zeta_m).  Enumerates (Z/m)^x.
  std::vector<u64> fixing_group_in(u64 m) const;

  bool is_subfield_of(const AbelianField& other) const;
  AbelianField compositum(const AbelianField& other) const;

  FrobeniusClass frobenius_class(u64 l) const;
  /// Frobenius-type class of an arbitrary unit x mod f (no ramification check).
  IntVec class_of(u64 x) const;

  /// Largest subfield unramified at p.
  AbelianField inertia_field(u64 p) const;

  /// All subfields of index p (relative degree [K : K'] = p), deterministic order.
  std::vector<AbelianField> index_p_subfields(u64 p) const;

  nlohmann::json to_json() const;
  static AbelianField from_json(const nlohmann::json& j);

  /// Same field, possibly presented at different moduli.
  friend bool operator==(const AbelianField& a, const AbelianField& b);

private:
  std::shared_ptr<const UnitGroup> group_;
  Lattice fixing_;
};

/// Q_n: the degree p^n subfield of Q(zeta_{p^{n+1}}).
AbelianField cyclotomic_zp_layer(u64 p, int n);

/// K_n = K Q_n inside Q(zeta_{lcm(f, p^{n+1})}).
AbelianField tower_layer(const AbelianField& K, u64 p, int n);

/// First layer of the cyclotomic Z_p-extension of F: the degree-p extension
/// of F inside F Q_infty.
AbelianField first_tower_layer(const AbelianField& F, u64 p);

/// Smallest n0 with inertia_field(K_n) equal for all n0 <= n <= max_n.
struct InertiaStabilization {
  int index;
  AbelianField field;
};
InertiaStabilization inertia_stabilization(const AbelianField& K, u64 p, int max_n);

/// Output of the counterexample builder: K with Gal(K/Q) = (Z/p)^2 and its
/// p+1 subfields of degree p, K^j of conductor prod_{i != j} l_i.
struct CounterexampleField {
  u64 p;
  std::vector<u64> primes;
  std::vector<u64> primitive_roots;             // g_i with chi_i(g_i) = 1
  std::vector<std::array<u64, 2>> vectors;      // v_i in (Z/p)^2
  AbelianField field;
  std::vector<AbelianField> subfields;          // K^1..K^{p+1}

  /// The character map (Z/f)^x -> (Z/p)^2, x -> sum_i chi_i(x) v_i.
  std::array<u64, 2> galois_image(u64 x) const;

  nlohmann::json to_json() const;
};

/// Builds K from a guenstige tuple (already verified by the caller) and
/// re-verifies conditions 1-4; throws CheckFailure on any violation.
CounterexampleField build_counterexample_field(const std::vector<u64>& primes, u64 p);

/// The p+1 lines of (Z/p)^2 as direction vectors: (1,t) for t < p, then (0,1).
std::vector<std::array<u64, 2>> projective_line_directions(u64 p);

} // namespace sinnott
