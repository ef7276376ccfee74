#pragma once
// Finitely presented modules over the group rings of group_ring.hpp, decided
// by Howell forms over Z/p^k.  A generator may carry a stabilizer S <= G; it
// then spans a copy of R[G/S] (the relations (s-1)e = 0 are built in).

#include "sinnott/group_ring.hpp"
#include "sinnott/howell.hpp"

#include <string>
#include <vector>

namespace sinnott {

class FPModule {
public:
  /// Relations given as one ring element per generator.
  FPModule(SpecPtr spec, std::vector<Subgroup> stabilizers,
           const std::vector<std::vector<GroupRingElt>>& relations,
           std::vector<std::string> names = {});
  /// Relations given directly as coordinate vectors of the free cover.
  static FPModule from_coordinates(SpecPtr spec, std::vector<Subgroup> stabilizers,
                                   std::vector<Vec> relations, std::vector<std::string> names = {});
  static FPModule free(SpecPtr spec, std::size_t rank);

  const SpecPtr& spec() const { return spec_; }
  std::size_t ngens() const { return stab_.size(); }
  const std::vector<Subgroup>& stabilizers() const { return stab_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Vec>& relations() const { return rel_; }

  /// Z/p^k-rank of the free cover: sum over generators of degree * [G : S].
  std::size_t dimension() const { return dim_; }
  std::size_t block_offset(std::size_t gen) const { return offset_[gen]; }
  std::size_t block_cosets(std::size_t gen) const { return ncos_[gen]; }
  /// Human-readable name of a coordinate: T^t * g * e_i.
  std::string coordinate_name(std::size_t index) const;

  Vec zero() const { return Vec(dim_, 0); }
  Vec generator(std::size_t gen) const;
  /// sum_i coeffs[i] e_i.
  Vec element(const std::vector<GroupRingElt>& coeffs) const;
  /// r * x.
  Vec act(const GroupRingElt& r, const Vec& x) const;
  /// Z/p^k-spanning set of the R-submodule generated by `gens`.
  std::vector<Vec> span_rows(const std::vector<Vec>& gens) const;

  const HowellForm& relation_form() const { return relform_; }
  /// R-span of gens, plus the relations.
  HowellForm submodule(const std::vector<Vec>& gens) const;
  bool is_zero(const Vec& x) const { return relform_.contains(x); }
  Vec canonical(const Vec& x) const { return relform_.reduce(x); }

  /// log_p |M|.
  long log_cardinality() const;
  /// dim_Fp M / (p, T, I_G) M.
  std::size_t nakayama_rank() const;

  /// Same module viewed over (Z/p^k)[T]/(f) (G forgotten).
  FPModule restrict_to_lambda() const;
  /// M / T M over (Z/p^k)[G].
  FPModule coinvariants() const;

private:
  FPModule(SpecPtr spec, std::vector<Subgroup> stabilizers, std::vector<std::string> names);
  void finish(std::vector<Vec> relations);

  SpecPtr spec_;
  std::vector<Subgroup> stab_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::uint32_t>> coset_;  // per generator: g -> coset
  std::vector<std::vector<std::uint32_t>> rep_;    // per generator: coset -> smallest element
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> ncos_;
  std::size_t dim_ = 0;
  std::vector<Vec> rel_;
  HowellForm relform_;
};

/// |M| = |R|^{nakayama_rank(M)}; needs G to be a p-group so R is local.
bool is_free_local(const FPModule& m);

/// Elements x of the free cover with (s - 1) x in the relations for every
/// s in `acting`; the span contains the relations.
HowellForm invariants(const FPModule& m, const std::vector<GroupRingElt>& acting);
HowellForm subgroup_invariants(const FPModule& m, const Subgroup& h);

/// Z/p^k-linear map between free covers, stored by images of basis vectors.
struct LinearMap {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<Vec> columns;

  Vec apply(const Vec& x, u64 modulus) const;
};

/// The map sending e_i to generator_images[i], extended semilinearly along
/// the ring change R_source -> R_target (lift or projection in T, same G).
LinearMap module_map(const FPModule& source, const FPModule& target,
                     const std::vector<Vec>& generator_images);

struct FreenessReport {
  bool free;                   // X = Y
  bool finite_index_certified; // Y/X killed by p^{k-1} and T^{d-1}
  long log_index;              // log_p [Y : X]
  std::string caveat;
};

/// X (given by generators inside the free module Y) is free iff X = Y.
FreenessReport finite_index_freeness(const std::vector<Vec>& x_gens, const FPModule& y);

struct DescentReport {
  bool holds;
  bool image_in_invariants;
  bool invariants_in_image;
  long log_index; // log_p [invariants : image]
  Vec witness;    // an invariant element outside the image, if any
};

/// upper^{<acting>} = ext(lower) + relations, by mutual membership.
DescentReport descent_check(const FPModule& lower, const FPModule& upper, const LinearMap& ext,
                            const std::vector<GroupRingElt>& acting);

/// Modules M_0, ..., M_L over the finite-level rings with ext/norm maps
/// between consecutive levels.
struct Tower {
  std::vector<FPModule> levels;
  std::vector<LinearMap> ext;  // level n -> n+1
  std::vector<LinearMap> norm; // level n+1 -> n
  std::vector<GroupRingElt> layer_trace;     // Tr_{n+1,n} in R_{n+1}
  std::vector<GroupRingElt> layer_generator; // gamma^{p^n} in R_{n+1}
};

/// N(e^{(n+1)}) = e^{(n)} and i(e^{(n)}) = Tr_{n+1,n} e^{(n+1)} for modules
/// with matching generators at every level.
Tower standard_tower(std::vector<FPModule> levels);

struct AxiomReport {
  bool ok;
  std::vector<std::string> violations;
};

/// i o N = Tr, N o i = p, and both maps carry relations to relations.
AxiomReport axioms_check(const Tower& tower);

} // namespace sinnott
