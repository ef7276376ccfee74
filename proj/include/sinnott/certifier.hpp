#pragma once
// The non-freeness certificate for the circular units of a counterexample
// field K with Gal(K/Q) = (Z/p)^2.  C is modelled as the module over
// (Z/p^k)[T]/(T^d)[G] generated by eps^Q, eps^1..eps^{p+1}, eps^K (eps^i fixed
// by H_i = Gal(K/K^i), eps^Q by G) subject to the trace relations R1, R2.

#include "sinnott/abelian_field.hpp"
#include "sinnott/fp_module.hpp"
#include "sinnott/group_ring.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sinnott {

inline constexpr const char* kCertificateSchema = "sinnott-cert/1";

struct CounterexamplePresentation {
  CounterexampleField field;
  int requested_degree; // d before the division by T in R2
  SpecPtr spec;         // working ring, degree d - 1
  std::vector<PadicInt> c;                  // c_{l_i}
  std::vector<std::uint32_t> frobenius;     // Frob of l_i on K^i, lifted to G
  std::vector<Subgroup> lines;              // H_i
  std::vector<std::uint32_t> coset_generators; // g_i, generating G/H_i
  std::vector<GroupRingElt> u;  // 1 - Frob(l_i)^{-1}, as used in R1
  std::vector<GroupRingElt> w;  // prod_{j != i} u_j / T
  GroupRingElt product_over_T;  // prod_i u_i / T
  FPModule module;

  std::size_t gen_Q() const { return 0; }
  std::size_t gen_i(std::size_t i) const { return 1 + i; }
  std::size_t gen_K() const { return 1 + lines.size(); }
  std::size_t rank() const { return lines.size(); }
};

/// Presentation of the model over (Z/p^k)[T]/(T^{d-1})[G].  `coset_generators`
/// picks g_i (default: the smallest element outside H_i).
CounterexamplePresentation build_presentation(const CounterexampleField& field, int k, int d,
                                              std::vector<std::uint32_t> coset_generators = {});

/// Same presentation with R1^{(i)} using `unit` in place of u_i; everything
/// derived from u (R3, R4, w) is left alone.
CounterexamplePresentation with_corrupted_R1(const CounterexamplePresentation& pres, std::size_t i,
                                             const GroupRingElt& unit);

/// Every choice of the classes g_i H_i, as coset generator lists ((p-1)^{p+1} of them).
std::vector<std::vector<std::uint32_t>> coset_generator_choices(const CounterexamplePresentation& pres);

struct CheckResult {
  std::string name;
  bool verdict;
  nlohmann::json witness;
  nlohmann::json precision; // {k, d or n, soundness}
};

CheckResult check_conditions(const CounterexamplePresentation& pres);
CheckResult derive_R3_R4(const CounterexamplePresentation& pres);
CheckResult check_sfree_basis(const CounterexamplePresentation& pres);
CheckResult check_Q_nonzero(const CounterexamplePresentation& pres);
CheckResult certify_torsion(const CounterexamplePresentation& pres);
/// is_free_local of the model viewed over (Z/p^k)[T]/(T^{d-1}); passes when false.
CheckResult check_not_free(const CounterexamplePresentation& pres);

/// The model of the span of eps^Q and all conjugates of the eps^i over
/// (Z/p^k)[T]/(T^{d-1}), with R2 as its only relations.
FPModule sfree_model(const CounterexamplePresentation& pres);

struct LevelReport {
  int level; // descent from level to level + 1
  bool counterexample_descends;
  long counterexample_log_index;
  bool control_descends;
};

struct TowerReport {
  bool axioms_ok;
  bool control_axioms_ok;
  std::vector<std::string> violations;
  std::vector<LevelReport> layers;
};

/// Finite-level models for n = 0..levels, at precision k.
std::vector<FPModule> counterexample_tower_levels(const CounterexampleField& field, int k, int levels);
TowerReport build_tower_and_descend(const CounterexampleField& field, int k, int levels);
CheckResult check_tower(const CounterexampleField& field, int k, int levels);

struct CertifyOptions {
  int k = 8;
  int d = 16;
  int levels = 0; // 0 skips the tower
};

/// Runs the whole chain; order: conditions, R3/R4, Sfree, Q != 0, torsion,
/// non-freeness, tower.
std::vector<CheckResult> run_checks(const CounterexampleField& field, const CertifyOptions& opts);

/// Certificate JSON; a failure report naming the first failed check if any
/// check failed or one of the required checks is missing.
nlohmann::json emit_certificate(const CounterexampleField& field, const CertifyOptions& opts,
                                const std::vector<CheckResult>& checks);
bool certificate_passed(const nlohmann::json& cert);
/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string certificate_text(const nlohmann::json& cert);

} // namespace sinnott
