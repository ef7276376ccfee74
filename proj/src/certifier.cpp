#include "sinnott/certifier.hpp"

#include "sinnott/error.hpp"
#include "sinnott/prospector.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <variant>

namespace sinnott {

namespace {

using Coeffs = std::vector<GroupRingElt>;

nlohmann::json named(const FPModule& m, const Vec& v)
{
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      out[m.coordinate_name(i)] = v[i];
  return out;
}

bool all_zero(const Vec& v)
{
  for (u64 x : v)
    if (x != 0)
      return false;
  return true;
}

Vec difference(const Vec& a, const Vec& b, u64 mod)
{
  Vec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    d[i] = (a[i] + mod - b[i]) % mod;
  return d;
}

nlohmann::json truncation_precision(const CounterexamplePresentation& pres, const char* soundness)
{
  return {{"k", pres.spec->precision()},
          {"d", pres.requested_degree},
          {"d_after_division", pres.spec->degree()},
          {"soundness", soundness}};
}

constexpr const char* kQuotientSound =
    "sound at the infinite level: non-membership in a quotient lifts";
constexpr const char* kIdentity = "exact identity in the truncated ring";
constexpr const char* kModel = "finite-precision model statement (proxy)";

std::uint32_t group_index(const FiniteAbelianGroup& g, const std::array<u64, 2>& v)
{
  return g.index({v[0], v[1]});
}

// Frobenius of l_i on K^i, lifted to G: the character values of l_i at the
// other primes.  l_i itself ramifies, so its own coordinate is left at 0.
std::array<u64, 2> frobenius_vector(const CounterexampleField& f, std::size_t i)
{
  std::array<u64, 2> out{0, 0};
  for (std::size_t j = 0; j < f.primes.size(); ++j) {
    if (j == i)
      continue;
    const u64 l = f.primes[j];
    const u64 chi = discrete_log(f.primitive_roots[j], f.primes[i] % l, l - 1, l) % f.p;
    out[0] = (out[0] + chi * f.vectors[j][0]) % f.p;
    out[1] = (out[1] + chi * f.vectors[j][1]) % f.p;
  }
  return out;
}

std::vector<Subgroup> field_lines(const CounterexampleField& f, const FiniteAbelianGroup& g)
{
  std::vector<Subgroup> lines;
  for (const auto& v : f.vectors)
    lines.push_back(g.closure({group_index(g, v)}));
  return lines;
}

std::vector<Subgroup> stabilizers_for(const FiniteAbelianGroup& g, const std::vector<Subgroup>& lines)
{
  std::vector<Subgroup> stab{g.whole()};
  stab.insert(stab.end(), lines.begin(), lines.end());
  stab.push_back(g.trivial());
  return stab;
}

std::vector<std::string> generator_names(std::size_t r)
{
  std::vector<std::string> names{"eps^Q"};
  for (std::size_t i = 0; i < r; ++i)
    names.push_back(fmt::format("eps^{}", i + 1));
  names.push_back("eps^K");
  return names;
}

GroupRingElt coset_trace(const SpecPtr& spec, std::uint32_t g, u64 p)
{
  return geometric_sum(GroupRingElt::group_element(spec, g), p);
}

// R1^{(i)} for all i, then R2^{(i)} for all i.
FPModule assemble(const SpecPtr& spec, const std::vector<Subgroup>& lines,
                  const std::vector<std::uint32_t>& coset_gens, const Coeffs& r1_units,
                  const Coeffs& w)
{
  const auto& G = spec->group();
  const u64 p = spec->prime();
  const std::size_t r = lines.size();
  const std::size_t K = r + 1;
  std::vector<Coeffs> rels;
  for (std::size_t i = 0; i < r; ++i) {
    Coeffs rel(r + 2, GroupRingElt::zero(spec));
    rel[K] = trace_element(lines[i], spec);
    rel[1 + i] = -r1_units[i];
    rels.push_back(std::move(rel));
  }
  for (std::size_t i = 0; i < r; ++i) {
    Coeffs rel(r + 2, GroupRingElt::zero(spec));
    rel[1 + i] = coset_trace(spec, coset_gens[i], p);
    rel[0] = -w[i];
    rels.push_back(std::move(rel));
  }
  return FPModule(spec, stabilizers_for(G, lines), rels, generator_names(r));
}

std::uint32_t default_coset_generator(const FiniteAbelianGroup& g, const Subgroup& h)
{
  for (std::uint32_t x = 0; x < g.size(); ++x)
    if (!std::binary_search(h.begin(), h.end(), x))
      return x;
  throw InvalidArgument("subgroup is the whole group");
}

} // namespace

CounterexamplePresentation build_presentation(const CounterexampleField& field, int k, int d,
                                              std::vector<std::uint32_t> coset_generators)
{
  const u64 p = field.p;
  require(field.primes.size() == p + 1 && field.vectors.size() == p + 1,
          "counterexample field needs p + 1 primes");
  require(d >= 2, "truncation degree must be at least 2");
  const SpecPtr full = RingSpec::truncated(p, k, d, {p, p});
  const SpecPtr spec = full->with_degree(d - 1);
  const auto& G = full->group();
  const std::size_t r = p + 1;

  CounterexamplePresentation pres{field, d, spec, {}, {}, field_lines(field, G), {}, {}, {},
                                  GroupRingElt::zero(spec), FPModule::free(spec, 1)};
  if (coset_generators.empty())
    for (const auto& h : pres.lines)
      coset_generators.push_back(default_coset_generator(G, h));
  require(coset_generators.size() == r, "need one coset generator per subfield");
  for (std::size_t i = 0; i < r; ++i)
    require(coset_generators[i] < G.size() &&
                !std::binary_search(pres.lines[i].begin(), pres.lines[i].end(), coset_generators[i]),
            fmt::format("g_{} must generate G/H_{}", i + 1, i + 1));
  pres.coset_generators = std::move(coset_generators);

  const int kc = frobenius_precision_needed(*full);
  Coeffs gamma_parts;
  for (std::size_t i = 0; i < r; ++i) {
    pres.c.push_back(frobenius_exponent(field.primes[i], p, kc));
    const std::uint32_t frob = group_index(G, frobenius_vector(field, i));
    pres.frobenius.push_back(frob);
    if (!std::binary_search(pres.lines[i].begin(), pres.lines[i].end(), frob))
      throw CheckFailure(fmt::format("condition 4 fails: Frobenius of {} is nontrivial on K^{}",
                                     field.primes[i], i + 1));
    const GroupRingElt gp = one_minus_frob_inv(pres.c.back(), full);
    gamma_parts.push_back(gp);
    const GroupRingElt inv_frob = GroupRingElt::group_element(full, G.inv(frob));
    const GroupRingElt ui = GroupRingElt::scalar(full, 1) - inv_frob * (GroupRingElt::scalar(full, 1) - gp);
    pres.u.push_back(ui.truncated(d - 1));
  }
  for (std::size_t i = 0; i < r; ++i) {
    GroupRingElt prod = GroupRingElt::scalar(full, 1);
    for (std::size_t j = 0; j < r; ++j)
      if (j != i)
        prod = prod * gamma_parts[j];
    pres.w.push_back(divide_by_T(prod));
  }
  GroupRingElt all = GroupRingElt::scalar(full, 1);
  for (const auto& gp : gamma_parts)
    all = all * gp;
  pres.product_over_T = divide_by_T(all);
  pres.module = assemble(spec, pres.lines, pres.coset_generators, pres.u, pres.w);
  return pres;
}

CounterexamplePresentation with_corrupted_R1(const CounterexamplePresentation& pres, std::size_t i,
                                             const GroupRingElt& unit)
{
  require(i < pres.rank(), "no such relation");
  CounterexamplePresentation out = pres;
  Coeffs units = pres.u;
  units[i] = unit;
  out.module = assemble(pres.spec, pres.lines, pres.coset_generators, units, pres.w);
  return out;
}

std::vector<std::vector<std::uint32_t>> coset_generator_choices(const CounterexamplePresentation& pres)
{
  const auto& G = pres.spec->group();
  // One representative per nontrivial class of G/H_i.
  std::vector<std::vector<std::uint32_t>> per_line;
  for (const auto& h : pres.lines) {
    const auto cos = G.coset_index(h);
    std::vector<std::uint32_t> reps;
    std::vector<bool> seen(G.size(), false);
    seen[cos[0]] = true;
    for (std::uint32_t x = 0; x < G.size(); ++x)
      if (!seen[cos[x]]) {
        seen[cos[x]] = true;
        reps.push_back(x);
      }
    per_line.push_back(reps);
  }
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (const auto& reps : per_line) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& prefix : out)
      for (std::uint32_t x : reps) {
        auto v = prefix;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

CheckResult check_conditions(const CounterexamplePresentation& pres)
{
  const CounterexampleField& f = pres.field;
  const u64 p = f.p;
  nlohmann::json wit;
  bool ok = true;

  const auto tuple = check_tuple(f.primes, p);
  const bool guenstig = std::holds_alternative<GuenstigeTuple>(tuple);
  wit["condition_1"] = guenstig ? nlohmann::json("guenstige")
                                : nlohmann::json(std::get<TupleRejection>(tuple).message);
  ok &= guenstig;

  const bool galois = f.field.degree() == p * p && f.subfields.size() == p + 1;
  wit["condition_2"] = {{"degree", f.field.degree()}, {"subfields", f.subfields.size()}};
  ok &= galois;

  u64 conductor = 1;
  for (u64 l : f.primes)
    conductor *= l;
  nlohmann::json conds = nlohmann::json::array();
  for (std::size_t j = 0; j < f.subfields.size(); ++j) {
    const u64 c = f.subfields[j].conductor();
    conds.push_back(c);
    ok &= c == conductor / f.primes[j] && f.subfields[j].degree() == p;
  }
  wit["condition_3"] = conds;

  // Condition 4: u_i e^i is divisible by T in R[G/H_i].
  nlohmann::json frob = nlohmann::json::array();
  const FPModule& m = pres.module;
  for (std::size_t i = 0; i < pres.rank(); ++i) {
    const Vec x = m.act(pres.u[i], m.generator(pres.gen_i(i)));
    bool t_div = true;
    for (std::size_t c = 0; c < m.block_cosets(pres.gen_i(i)); ++c)
      t_div &= x[m.block_offset(pres.gen_i(i)) + c] == 0;
    frob.push_back({{"prime", f.primes[i]},
                    {"frobenius", pres.spec->group().element_name(pres.frobenius[i])},
                    {"in_H_i", std::binary_search(pres.lines[i].begin(), pres.lines[i].end(),
                                                  pres.frobenius[i])},
                    {"u_i_divisible_by_T", t_div},
                    {"c", pres.c[i].value()},
                    {"c_precision", pres.c[i].precision()}});
    ok &= t_div;
  }
  wit["condition_4"] = frob;
  return {"conditions", ok, wit, truncation_precision(pres, kIdentity)};
}

CheckResult derive_R3_R4(const CounterexamplePresentation& pres)
{
  const FPModule& m = pres.module;
  const SpecPtr& spec = pres.spec;
  const u64 p = spec->prime();
  const u64 mod = spec->modulus();
  const std::size_t r = pres.rank();
  const auto& rels = m.relations();
  bool ok = formal_identity_check(p, spec);
  nlohmann::json wit;
  wit["formal_identity"] = ok;

  Coeffs r3(r + 2, GroupRingElt::zero(spec));
  r3[pres.gen_K()] = trace_element(spec->group().whole(), spec);
  r3[pres.gen_Q()] = -pres.product_over_T;
  const Vec R3 = m.element(r3);

  nlohmann::json couples = nlohmann::json::array();
  for (std::size_t i = 0; i < r; ++i) {
    const Vec a = m.act(coset_trace(spec, pres.coset_generators[i], p), rels[i]);
    const Vec b = m.act(pres.u[i], rels[r + i]);
    Vec comb(a.size());
    for (std::size_t c = 0; c < a.size(); ++c)
      comb[c] = (a[c] + b[c]) % mod;
    const Vec diff = difference(R3, comb, mod);
    const bool exact = all_zero(diff);
    couples.push_back({{"i", i + 1}, {"exact", exact}, {"defect", named(m, diff)}});
    ok &= exact;
  }
  const bool r3_in = m.is_zero(R3);
  ok &= r3_in;
  wit["R3_couples"] = couples;
  wit["R3_in_relations"] = r3_in;

  Coeffs r4(r + 2, GroupRingElt::zero(spec));
  r4[pres.gen_K()] = GroupRingElt::scalar(spec, static_cast<i64>(p));
  r4[pres.gen_Q()] = pres.product_over_T;
  for (std::size_t i = 0; i < r; ++i)
    r4[pres.gen_i(i)] = -pres.u[i];
  const Vec residue = m.canonical(m.element(r4));
  const bool r4_in = all_zero(residue);
  ok &= r4_in;
  wit["R4_residue"] = named(m, residue);
  wit["R4_in_relations"] = r4_in;
  return {"R3_R4", ok, wit, truncation_precision(pres, kIdentity)};
}

FPModule sfree_model(const CounterexamplePresentation& pres)
{
  const SpecPtr lam = pres.spec->with_group({});
  const u64 p = lam->prime();
  const std::size_t r = pres.rank();
  std::vector<std::string> names{"eps^Q"};
  for (std::size_t i = 0; i < r; ++i)
    for (u64 j = 0; j < p; ++j)
      names.push_back(fmt::format("g{}^{}*eps^{}", i + 1, j, i + 1));
  std::vector<Coeffs> rels;
  for (std::size_t i = 0; i < r; ++i) {
    Coeffs rel(names.size(), GroupRingElt::zero(lam));
    const auto aug = pres.w[i].augmentation();
    rel[0] = -GroupRingElt::polynomial(lam, std::vector<i64>(aug.begin(), aug.end()));
    for (u64 j = 0; j < p; ++j)
      rel[1 + i * p + j] = GroupRingElt::scalar(lam, 1);
    rels.push_back(std::move(rel));
  }
  return FPModule(lam, std::vector<Subgroup>(names.size(), lam->group().trivial()), rels, names);
}

CheckResult check_sfree_basis(const CounterexamplePresentation& pres)
{
  const FPModule& m = pres.module;
  const SpecPtr& spec = pres.spec;
  const u64 p = spec->prime();
  const auto& G = spec->group();
  const std::size_t r = pres.rank();
  nlohmann::json wit;

  std::vector<Vec> basis{m.generator(pres.gen_Q())};
  std::vector<Vec> all_gens{m.generator(pres.gen_Q())};
  for (std::size_t i = 0; i < r; ++i) {
    all_gens.push_back(m.generator(pres.gen_i(i)));
    for (u64 j = 0; j + 1 < p; ++j)
      basis.push_back(m.act(GroupRingElt::group_element(spec, G.pow(pres.coset_generators[i], j)),
                            m.generator(pres.gen_i(i))));
  }
  const bool count_ok = basis.size() == p * p;
  wit["basis_size"] = basis.size();

  // Lambda-span of the basis plus the relations.
  std::vector<Vec> rows = m.relation_form().rows();
  const GroupRingElt T = GroupRingElt::T(spec);
  for (const Vec& b : basis) {
    Vec x = b;
    for (int t = 0; t < spec->degree(); ++t) {
      rows.push_back(x);
      x = m.act(T, x);
    }
  }
  const HowellForm lam_span(p, spec->precision(), m.dimension(), rows);
  const HowellForm s_span = m.submodule(all_gens);
  const bool spans = lam_span == s_span;
  wit["lambda_span_equals_S"] = spans;

  nlohmann::json recovered = nlohmann::json::array();
  bool recover_ok = true;
  for (std::size_t i = 0; i < r; ++i) {
    const Vec omitted = m.act(
        GroupRingElt::group_element(spec, G.pow(pres.coset_generators[i], static_cast<i64>(p - 1))),
        m.generator(pres.gen_i(i)));
    const Vec res = lam_span.reduce(omitted);
    recover_ok &= all_zero(res);
    recovered.push_back({{"i", i + 1},
                         {"g_i", G.element_name(pres.coset_generators[i])},
                         {"residue", named(m, res)}});
  }
  wit["omitted_conjugates"] = recovered;

  const FPModule model = sfree_model(pres);
  const std::size_t rank = model.nakayama_rank();
  const bool free = is_free_local(model);
  wit["model"] = {{"generators", model.ngens()},
                  {"nakayama_rank", rank},
                  {"free", free},
                  {"log_cardinality", model.log_cardinality()}};
  const bool ok = count_ok && spans && recover_ok && rank == p * p && free;
  return {"sfree_basis", ok, wit, truncation_precision(pres, kModel)};
}

CheckResult check_Q_nonzero(const CounterexamplePresentation& pres)
{
  const FPModule& m = pres.module;
  const SpecPtr& spec = pres.spec;
  const u64 p = spec->prime();
  nlohmann::json wit;
  bool ok = true;

  nlohmann::json units = nlohmann::json::array();
  for (std::size_t i = 0; i < pres.rank(); ++i) {
    const bool prime = is_prime_to_p(pres.u[i]);
    units.push_back({{"i", i + 1}, {"c", pres.c[i].value()}, {"c_is_unit", pres.c[i].is_unit()},
                     {"prime_to_p", prime}});
    ok &= prime;
  }
  wit["u_i"] = units;

  std::vector<Vec> gens{m.generator(pres.gen_Q())};
  for (std::size_t i = 0; i < pres.rank(); ++i)
    gens.push_back(m.generator(pres.gen_i(i)));
  const HowellForm s = m.submodule(gens);
  const Vec eK = m.generator(pres.gen_K());
  const Vec residue = s.reduce(eK);
  const bool outside = !all_zero(residue);
  const bool p_inside = s.contains(m.act(GroupRingElt::scalar(spec, static_cast<i64>(p)), eK));
  wit["eps_K_residue_mod_S"] = named(m, residue);
  wit["p_eps_K_in_S"] = p_inside;
  ok &= outside && p_inside;
  return {"Q_nonzero", ok, wit, truncation_precision(pres, kQuotientSound)};
}

CheckResult certify_torsion(const CounterexamplePresentation& pres)
{
  const FPModule& m = pres.module;
  const SpecPtr& spec = pres.spec;
  const u64 p = spec->prime();
  nlohmann::json wit;

  bool const_ok = all_zero(pres.product_over_T.constant_terms());
  for (const auto& u : pres.u)
    const_ok &= all_zero(u.constant_terms());
  wit["R4_coefficients_divisible_by_T"] = const_ok;

  const FPModule co = m.coinvariants();
  const Vec eK = co.generator(pres.gen_K());
  const bool p_killed = co.is_zero(co.act(GroupRingElt::scalar(co.spec(), static_cast<i64>(p)), eK));
  const Vec residue = co.canonical(eK);
  const bool nonzero = !all_zero(residue);
  wit["p_eps_K_in_TC"] = p_killed;
  wit["eps_K_residue_mod_TC"] = named(co, residue);
  const bool ok = const_ok && p_killed && nonzero;
  wit["order"] = ok ? nlohmann::json(p) : nlohmann::json(nullptr);
  return {"torsion", ok, wit, truncation_precision(pres, kQuotientSound)};
}

CheckResult check_not_free(const CounterexamplePresentation& pres)
{
  const FPModule lam = pres.module.restrict_to_lambda();
  const bool free = is_free_local(lam);
  const std::size_t rank = lam.nakayama_rank();
  nlohmann::json wit = {{"nakayama_rank", rank},
                        {"log_cardinality", lam.log_cardinality()},
                        {"log_cardinality_if_free",
                         static_cast<long>(rank) * pres.spec->precision() * pres.spec->degree()},
                        {"free", free}};
  return {"not_lambda_free", !free, wit, truncation_precision(pres, kModel)};
}

std::vector<FPModule> counterexample_tower_levels(const CounterexampleField& field, int k, int levels)
{
  require(levels >= 1, "tower needs at least two levels");
  const u64 p = field.p;
  const std::size_t r = p + 1;
  std::vector<FPModule> out;
  for (int n = 0; n <= levels; ++n) {
    const SpecPtr spec = RingSpec::finite_level(p, k, n, {p, p});
    const auto& G = spec->group();
    const auto lines = field_lines(field, G);
    const u64 order = checked_pow(p, n);
    const GroupRingElt gamma = GroupRingElt::gamma(spec);
    const GroupRingElt one = GroupRingElt::scalar(spec, 1);
    // c modulo p^{n+k} gives the image of (gamma^c - 1)/(gamma - 1) in the level-n ring.
    Coeffs u, inv_power, quotient;
    for (std::size_t i = 0; i < r; ++i) {
      const u64 c = frobenius_exponent(field.primes[i], p, n + k).value();
      const GroupRingElt ginv = gamma.pow((order - c % order) % order);
      inv_power.push_back(ginv);
      quotient.push_back(ginv * geometric_sum(gamma, c));
      const std::uint32_t frob = group_index(G, frobenius_vector(field, i));
      if (!std::binary_search(lines[i].begin(), lines[i].end(), frob))
        throw CheckFailure(fmt::format("condition 4 fails for {}", field.primes[i]));
      u.push_back(one - GroupRingElt::group_element(spec, G.inv(frob)) * ginv);
    }
    Coeffs w;
    const GroupRingElt T = GroupRingElt::T(spec);
    for (std::size_t i = 0; i < r; ++i) {
      GroupRingElt x = T.pow(p - 1);
      for (std::size_t j = 0; j < r; ++j)
        if (j != i)
          x = x * quotient[j];
      w.push_back(x);
    }
    std::vector<std::uint32_t> gens;
    for (const auto& h : lines)
      gens.push_back(default_coset_generator(G, h));
    out.push_back(assemble(spec, lines, gens, u, w));
  }
  return out;
}

TowerReport build_tower_and_descend(const CounterexampleField& field, int k, int levels)
{
  const Tower tower = standard_tower(counterexample_tower_levels(field, k, levels));
  std::vector<FPModule> control_levels;
  for (int n = 0; n <= levels; ++n)
    control_levels.push_back(FPModule::free(RingSpec::finite_level(field.p, k, n, {field.p, field.p}), 1));
  const Tower control = standard_tower(std::move(control_levels));

  TowerReport rep;
  const AxiomReport ax = axioms_check(tower);
  const AxiomReport cax = axioms_check(control);
  rep.axioms_ok = ax.ok;
  rep.control_axioms_ok = cax.ok;
  rep.violations = ax.violations;
  rep.violations.insert(rep.violations.end(), cax.violations.begin(), cax.violations.end());
  for (int n = 0; n < levels; ++n) {
    const auto d = descent_check(tower.levels[n], tower.levels[n + 1], tower.ext[n],
                                 {tower.layer_generator[n]});
    const auto dc = descent_check(control.levels[n], control.levels[n + 1], control.ext[n],
                                  {control.layer_generator[n]});
    rep.layers.push_back({n, d.holds, d.log_index, dc.holds});
  }
  return rep;
}

CheckResult check_tower(const CounterexampleField& field, int k, int levels)
{
  const TowerReport rep = build_tower_and_descend(field, k, levels);
  bool ok = rep.axioms_ok && rep.control_axioms_ok;
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : rep.layers) {
    layers.push_back({{"from", l.level},
                      {"to", l.level + 1},
                      {"counterexample_descends", l.counterexample_descends},
                      {"log_index", l.counterexample_log_index},
                      {"control_descends", l.control_descends}});
    ok &= !l.counterexample_descends && l.control_descends;
  }
  nlohmann::json wit = {{"axioms", rep.axioms_ok},
                        {"control_axioms", rep.control_axioms_ok},
                        {"violations", rep.violations},
                        {"layers", layers}};
  nlohmann::json prec = {{"k", k}, {"levels", levels}, {"soundness", kModel}};
  return {"tower_descent", ok, wit, prec};
}

std::vector<CheckResult> run_checks(const CounterexampleField& field, const CertifyOptions& opts)
{
  std::vector<CheckResult> out;
  std::optional<CounterexamplePresentation> pres;
  try {
    pres = build_presentation(field, opts.k, opts.d);
  } catch (const CheckFailure& e) {
    out.push_back({"conditions", false, {{"error", e.what()}},
                   {{"k", opts.k}, {"d", opts.d}, {"soundness", kIdentity}}});
    return out;
  }
  out.push_back(check_conditions(*pres));
  out.push_back(derive_R3_R4(*pres));
  out.push_back(check_sfree_basis(*pres));
  out.push_back(check_Q_nonzero(*pres));
  out.push_back(certify_torsion(*pres));
  out.push_back(check_not_free(*pres));
  if (opts.levels > 0)
    out.push_back(check_tower(field, opts.k, opts.levels));
  return out;
}

nlohmann::json emit_certificate(const CounterexampleField& field, const CertifyOptions& opts,
                                const std::vector<CheckResult>& checks)
{
  std::vector<std::string> required{"conditions", "R3_R4",  "sfree_basis",
                                    "Q_nonzero",  "torsion", "not_lambda_free"};
  if (opts.levels > 0)
    required.push_back("tower_descent");

  nlohmann::json cert;
  cert["schema"] = kCertificateSchema;
  cert["p"] = field.p;
  cert["k"] = opts.k;
  cert["d"] = opts.d;
  cert["tuple"] = field.primes;
  cert["field"] = field.to_json();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks)
    list.push_back({{"name", c.name}, {"verdict", c.verdict}, {"witness", c.witness},
                    {"precision", c.precision}});
  cert["checks"] = list;

  std::optional<std::string> failed;
  for (const auto& name : required) {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
    if (it == checks.end() || !it->verdict) {
      failed = name;
      break;
    }
  }
  if (failed) {
    cert["verdict"] = "failed";
    cert["failed_check"] = *failed;
  } else {
    cert["verdict"] = fmt::format("not Λ-free (chain verified at precision k={}, d={})", opts.k, opts.d);
  }
  return cert;
}

bool certificate_passed(const nlohmann::json& cert)
{
  return cert.contains("verdict") && !cert.contains("failed_check") && cert["verdict"] != "failed";
}

std::string certificate_text(const nlohmann::json& cert)
{
  return cert.dump(2) + "\n";
}

} // namespace sinnott
