#include "sinnott/fp_module.hpp"

#include "sinnott/error.hpp"

#include <algorithm>

namespace sinnott {

namespace {

std::vector<std::uint32_t> generating_set(const FiniteAbelianGroup& g, const Subgroup& h)
{
  std::vector<std::uint32_t> gens;
  Subgroup current = g.trivial();
  for (std::uint32_t x : h)
    if (!std::binary_search(current.begin(), current.end(), x)) {
      gens.push_back(x);
      current = g.closure(gens);
    }
  return gens;
}

bool is_p_group(const FiniteAbelianGroup& g, u64 p)
{
  u64 n = g.size();
  while (n % p == 0)
    n /= p;
  return n == 1;
}

} // namespace

FPModule::FPModule(SpecPtr spec, std::vector<Subgroup> stabilizers, std::vector<std::string> names)
    : spec_(std::move(spec)), stab_(std::move(stabilizers)), names_(std::move(names)),
      relform_(spec_->prime(), spec_->precision(), 0, {})
{
  const auto& G = spec_->group();
  if (names_.empty())
    for (std::size_t i = 0; i < stab_.size(); ++i)
      names_.push_back("e" + std::to_string(i));
  require(names_.size() == stab_.size(), "one name per generator");
  const std::size_t D = static_cast<std::size_t>(spec_->degree());
  for (const Subgroup& s : stab_) {
    require(!s.empty() && s.front() == 0 && G.closure(s) == s, "stabilizer is not a subgroup");
    auto coset = G.coset_index(s);
    const std::size_t n = G.size() / s.size();
    std::vector<std::uint32_t> rep(n, 0);
    for (std::uint32_t g = G.size(); g-- > 0;)
      rep[coset[g]] = g;
    offset_.push_back(dim_);
    ncos_.push_back(n);
    dim_ += D * n;
    coset_.push_back(std::move(coset));
    rep_.push_back(std::move(rep));
  }
}

FPModule::FPModule(SpecPtr spec, std::vector<Subgroup> stabilizers,
                   const std::vector<std::vector<GroupRingElt>>& relations,
                   std::vector<std::string> names)
    : FPModule(std::move(spec), std::move(stabilizers), std::move(names))
{
  std::vector<Vec> rows;
  for (const auto& r : relations)
    rows.push_back(element(r));
  finish(std::move(rows));
}

FPModule FPModule::from_coordinates(SpecPtr spec, std::vector<Subgroup> stabilizers,
                                    std::vector<Vec> relations, std::vector<std::string> names)
{
  FPModule m(std::move(spec), std::move(stabilizers), std::move(names));
  m.finish(std::move(relations));
  return m;
}

FPModule FPModule::free(SpecPtr spec, std::size_t rank)
{
  std::vector<Subgroup> stab(rank, spec->group().trivial());
  return from_coordinates(std::move(spec), std::move(stab), {});
}

void FPModule::finish(std::vector<Vec> relations)
{
  for (const auto& r : relations)
    require(r.size() == dim_, "relation has the wrong length");
  rel_ = std::move(relations);
  relform_ = HowellForm(spec_->prime(), spec_->precision(), dim_, span_rows(rel_));
}

std::string FPModule::coordinate_name(std::size_t index) const
{
  require(index < dim_, "coordinate out of range");
  std::size_t i = 0;
  while (i + 1 < offset_.size() && offset_[i + 1] <= index)
    ++i;
  const std::size_t local = index - offset_[i];
  const std::size_t t = local / ncos_[i];
  const std::size_t c = local % ncos_[i];
  std::string s = "T^" + std::to_string(t);
  if (spec_->group().size() > 1)
    s += "*g" + spec_->group().element_name(rep_[i][c]);
  return s + "*" + names_[i];
}

Vec FPModule::generator(std::size_t gen) const
{
  require(gen < ngens(), "generator out of range");
  Vec v = zero();
  v[offset_[gen]] = 1 % spec_->modulus();
  return v;
}

Vec FPModule::element(const std::vector<GroupRingElt>& coeffs) const
{
  require(coeffs.size() == ngens(), "need one coefficient per generator");
  const u64 m = spec_->modulus();
  const std::uint32_t n = spec_->group().size();
  Vec v = zero();
  for (std::size_t i = 0; i < ngens(); ++i) {
    require(*coeffs[i].spec() == *spec_, "coefficient ring mismatch: " +
                                             coeffs[i].spec()->describe() + " vs " +
                                             spec_->describe());
    const auto& c = coeffs[i].coefficients();
    for (std::size_t idx = 0; idx < c.size(); ++idx)
      if (c[idx]) {
        const std::size_t t = idx / n;
        const std::uint32_t g = static_cast<std::uint32_t>(idx % n);
        u64& slot = v[offset_[i] + t * ncos_[i] + coset_[i][g]];
        slot = (slot + c[idx]) % m;
      }
  }
  return v;
}

Vec FPModule::act(const GroupRingElt& r, const Vec& x) const
{
  require(*r.spec() == *spec_, "ring mismatch in module action");
  require(x.size() == dim_, "vector has the wrong length");
  const RingSpec& s = *spec_;
  const u64 m = s.modulus();
  const std::uint32_t n = s.group().size();
  const std::size_t D = static_cast<std::size_t>(s.degree());
  const std::size_t tmax = s.flavor() == RingSpec::Flavor::Truncated ? D : 2 * D - 1;

  struct Term {
    std::size_t t;
    std::uint32_t g;
    u64 v;
  };
  std::vector<Term> terms;
  const auto& rc = r.coefficients();
  for (std::size_t idx = 0; idx < rc.size(); ++idx)
    if (rc[idx])
      terms.push_back({idx / n, static_cast<std::uint32_t>(idx % n), rc[idx]});

  Vec out = zero();
  for (std::size_t i = 0; i < ngens(); ++i) {
    std::vector<std::vector<u64>> acc(ncos_[i], std::vector<u64>(tmax, 0));
    bool any = false;
    for (std::size_t t2 = 0; t2 < D; ++t2)
      for (std::size_t c = 0; c < ncos_[i]; ++c) {
        const u64 xv = x[offset_[i] + t2 * ncos_[i] + c];
        if (!xv)
          continue;
        any = true;
        const std::uint32_t rep = rep_[i][c];
        for (const Term& term : terms) {
          const std::size_t t = term.t + t2;
          if (t >= tmax)
            continue;
          u64& slot = acc[coset_[i][s.group().mul(term.g, rep)]][t];
          slot = (slot + mulmod(term.v, xv, m)) % m;
        }
      }
    if (!any)
      continue;
    for (std::size_t c = 0; c < ncos_[i]; ++c) {
      s.reduce_poly(acc[c]);
      for (std::size_t t = 0; t < D; ++t)
        out[offset_[i] + t * ncos_[i] + c] = acc[c][t];
    }
  }
  return out;
}

std::vector<Vec> FPModule::span_rows(const std::vector<Vec>& gens) const
{
  const auto& G = spec_->group();
  // Elements acting trivially on every block contribute nothing new.
  Subgroup common = G.whole();
  for (const Subgroup& s : stab_) {
    Subgroup both;
    std::set_intersection(common.begin(), common.end(), s.begin(), s.end(),
                          std::back_inserter(both));
    common = std::move(both);
  }
  const auto coset = G.coset_index(common);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t g = 0; g < G.size(); ++g)
    if (coset[g] == reps.size())
      reps.push_back(g);

  const GroupRingElt T = GroupRingElt::T(spec_);
  std::vector<Vec> rows;
  for (const Vec& v : gens) {
    require(v.size() == dim_, "vector has the wrong length");
    for (std::uint32_t g : reps) {
      Vec w = act(GroupRingElt::group_element(spec_, g), v);
      for (int t = 0; t < spec_->degree(); ++t) {
        if (std::all_of(w.begin(), w.end(), [](u64 x) { return x == 0; }))
          break;
        rows.push_back(w);
        if (t + 1 < spec_->degree())
          w = act(T, w);
      }
    }
  }
  return rows;
}

HowellForm FPModule::submodule(const std::vector<Vec>& gens) const
{
  std::vector<Vec> rows = span_rows(gens);
  rows.insert(rows.end(), relform_.rows().begin(), relform_.rows().end());
  return HowellForm(spec_->prime(), spec_->precision(), dim_, std::move(rows));
}

long FPModule::log_cardinality() const
{
  return static_cast<long>(spec_->precision()) * static_cast<long>(dim_) -
         relform_.log_cardinality();
}

std::size_t FPModule::nakayama_rank() const
{
  const u64 p = spec_->prime();
  std::vector<std::vector<u64>> mat;
  for (const Vec& row : relform_.rows()) {
    std::vector<u64> r(ngens(), 0);
    for (std::size_t i = 0; i < ngens(); ++i)
      for (std::size_t c = 0; c < ncos_[i]; ++c)
        r[i] = (r[i] + row[offset_[i] + c]) % p;
    mat.push_back(std::move(r));
  }
  // Rank over F_p.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ngens() && rank < mat.size(); ++col) {
    std::size_t piv = rank;
    while (piv < mat.size() && mat[piv][col] == 0)
      ++piv;
    if (piv == mat.size())
      continue;
    std::swap(mat[piv], mat[rank]);
    const u64 inv = inverse_mod(mat[rank][col], p);
    for (auto& x : mat[rank])
      x = x * inv % p;
    for (std::size_t r = 0; r < mat.size(); ++r)
      if (r != rank && mat[r][col]) {
        const u64 f = mat[r][col];
        for (std::size_t c = 0; c < ngens(); ++c)
          mat[r][c] = (mat[r][c] + (p - f) * mat[rank][c]) % p;
      }
    ++rank;
  }
  return ngens() - rank;
}

FPModule FPModule::restrict_to_lambda() const
{
  SpecPtr lam = spec_->with_group({});
  const std::size_t D = static_cast<std::size_t>(spec_->degree());
  std::vector<std::string> names;
  std::vector<std::size_t> base;
  for (std::size_t i = 0; i < ngens(); ++i) {
    base.push_back(names.size());
    for (std::size_t c = 0; c < ncos_[i]; ++c)
      names.push_back(spec_->group().size() > 1
                          ? "g" + spec_->group().element_name(rep_[i][c]) + "*" + names_[i]
                          : names_[i]);
  }
  auto remap = [&](const Vec& v) {
    Vec w(dim_, 0);
    for (std::size_t i = 0; i < ngens(); ++i)
      for (std::size_t t = 0; t < D; ++t)
        for (std::size_t c = 0; c < ncos_[i]; ++c)
          w[(base[i] + c) * D + t] = v[offset_[i] + t * ncos_[i] + c];
    return w;
  };
  std::vector<Vec> rels;
  for (const Vec& r : relform_.rows())
    rels.push_back(remap(r));
  std::vector<Subgroup> stab(names.size(), Subgroup{0});
  return from_coordinates(lam, std::move(stab), std::move(rels), std::move(names));
}

FPModule FPModule::coinvariants() const
{
  SpecPtr r0 = RingSpec::truncated(spec_->prime(), spec_->precision(), 1,
                                   spec_->group().orders());
  std::vector<Vec> rels;
  for (const Vec& row : relform_.rows()) {
    Vec w;
    for (std::size_t i = 0; i < ngens(); ++i)
      for (std::size_t c = 0; c < ncos_[i]; ++c)
        w.push_back(row[offset_[i] + c]);
    rels.push_back(std::move(w));
  }
  return from_coordinates(r0, stab_, std::move(rels), names_);
}

bool is_free_local(const FPModule& m)
{
  const RingSpec& s = *m.spec();
  require(is_p_group(s.group(), s.prime()), "group ring is not local: |G| is not a power of p");
  const long log_ring = static_cast<long>(s.precision()) * static_cast<long>(s.dimension());
  return m.log_cardinality() == static_cast<long>(m.nakayama_rank()) * log_ring;
}

HowellForm invariants(const FPModule& m, const std::vector<GroupRingElt>& acting)
{
  const std::size_t dim = m.dimension();
  const std::size_t s = acting.size();
  const std::size_t ncols = s * dim + dim;
  const u64 mod = m.spec()->modulus();
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < dim; ++j) {
    Vec basis = m.zero();
    basis[j] = 1;
    Vec row(ncols, 0);
    for (std::size_t l = 0; l < s; ++l) {
      Vec img = m.act(acting[l], basis);
      img[j] = (img[j] + mod - 1) % mod;
      std::copy(img.begin(), img.end(), row.begin() + static_cast<std::ptrdiff_t>(l * dim));
    }
    row[s * dim + j] = 1;
    rows.push_back(std::move(row));
  }
  for (const Vec& r : m.relation_form().rows())
    for (std::size_t l = 0; l < s; ++l) {
      Vec row(ncols, 0);
      std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(l * dim));
      rows.push_back(std::move(row));
    }
  HowellForm h(m.spec()->prime(), m.spec()->precision(), ncols, std::move(rows));

  std::vector<Vec> kernel(m.relation_form().rows());
  for (std::size_t i = 0; i < h.rows().size(); ++i)
    if (h.pivot_columns()[i] >= s * dim)
      kernel.emplace_back(h.rows()[i].begin() + static_cast<std::ptrdiff_t>(s * dim),
                          h.rows()[i].end());
  return HowellForm(m.spec()->prime(), m.spec()->precision(), dim, std::move(kernel));
}

HowellForm subgroup_invariants(const FPModule& m, const Subgroup& h)
{
  std::vector<GroupRingElt> acting;
  for (std::uint32_t g : generating_set(m.spec()->group(), h))
    acting.push_back(GroupRingElt::group_element(m.spec(), g));
  return invariants(m, acting);
}

Vec LinearMap::apply(const Vec& x, u64 modulus) const
{
  require(x.size() == source_dim, "vector has the wrong length for this map");
  Vec out(target_dim, 0);
  for (std::size_t j = 0; j < source_dim; ++j) {
    if (!x[j])
      continue;
    for (std::size_t i = 0; i < target_dim; ++i)
      if (columns[j][i])
        out[i] = (out[i] + mulmod(x[j], columns[j][i], modulus)) % modulus;
  }
  return out;
}

LinearMap module_map(const FPModule& source, const FPModule& target,
                     const std::vector<Vec>& generator_images)
{
  const RingSpec& s = *source.spec();
  const RingSpec& t = *target.spec();
  require(s.prime() == t.prime() && s.precision() == t.precision() && s.group() == t.group(),
          "module map needs rings over the same Z/p^k and the same G");
  require(generator_images.size() == source.ngens(), "need one image per generator");
  LinearMap map{source.dimension(), target.dimension(), {}};
  map.columns.reserve(source.dimension());
  for (std::size_t i = 0; i < source.ngens(); ++i) {
    const std::size_t n = source.block_cosets(i);
    // Representatives of G / S_i, in coset order.
    std::vector<std::uint32_t> reps(n, 0);
    const auto coset = s.group().coset_index(source.stabilizers()[i]);
    for (std::uint32_t g = s.group().size(); g-- > 0;)
      reps[coset[g]] = g;
    for (int deg = 0; deg < s.degree(); ++deg)
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<i64> mono(static_cast<std::size_t>(deg) + 1, 0);
        mono[deg] = 1;
        GroupRingElt rho = GroupRingElt::polynomial(target.spec(), mono) *
                           GroupRingElt::group_element(target.spec(), reps[c]);
        map.columns.push_back(target.act(rho, generator_images[i]));
      }
  }
  return map;
}

FreenessReport finite_index_freeness(const std::vector<Vec>& x_gens, const FPModule& y)
{
  require(y.relations().empty(), "Y must be free (no relations)");
  for (const Subgroup& s : y.stabilizers())
    require(s.size() == 1, "Y must be free (trivial stabilizers)");
  const RingSpec& spec = *y.spec();
  const HowellForm x = y.submodule(x_gens);
  const long full = static_cast<long>(spec.precision()) * static_cast<long>(y.dimension());
  FreenessReport rep{};
  rep.log_index = full - x.log_cardinality();
  rep.free = rep.log_index == 0;

  const GroupRingElt pk1 =
      GroupRingElt::scalar(y.spec(), static_cast<i64>(checked_pow(spec.prime(), spec.precision() - 1)));
  const GroupRingElt td1 = GroupRingElt::T(y.spec()).pow(static_cast<u64>(spec.degree() - 1));
  rep.finite_index_certified = true;
  for (std::size_t i = 0; i < y.ngens(); ++i) {
    const Vec e = y.generator(i);
    rep.finite_index_certified = rep.finite_index_certified && x.contains(y.act(pk1, e)) &&
                                 x.contains(y.act(td1, e));
  }
  if (!rep.finite_index_certified)
    rep.caveat = "Y/X is not killed by p^(k-1) and T^(d-1); finite index is a truncation "
                 "artifact here and the criterion does not apply";
  return rep;
}

DescentReport descent_check(const FPModule& lower, const FPModule& upper, const LinearMap& ext,
                            const std::vector<GroupRingElt>& acting)
{
  require(ext.source_dim == lower.dimension() && ext.target_dim == upper.dimension(),
          "extension map does not match the modules");
  const HowellForm inv = invariants(upper, acting);
  std::vector<Vec> rows = ext.columns;
  rows.insert(rows.end(), upper.relation_form().rows().begin(), upper.relation_form().rows().end());
  const HowellForm img(upper.spec()->prime(), upper.spec()->precision(), upper.dimension(),
                       std::move(rows));
  DescentReport rep{};
  rep.image_in_invariants = inv.contains(img);
  rep.invariants_in_image = true;
  for (const Vec& r : inv.rows())
    if (!img.contains(r)) {
      rep.invariants_in_image = false;
      rep.witness = r;
      break;
    }
  rep.holds = rep.image_in_invariants && rep.invariants_in_image;
  rep.log_index = inv.log_cardinality() - img.log_cardinality();
  return rep;
}

Tower standard_tower(std::vector<FPModule> levels)
{
  require(!levels.empty(), "tower needs at least one level");
  Tower tower;
  for (std::size_t n = 0; n + 1 < levels.size(); ++n) {
    const FPModule& lo = levels[n];
    const FPModule& up = levels[n + 1];
    require(lo.spec()->flavor() == RingSpec::Flavor::FiniteLevel &&
                up.spec()->flavor() == RingSpec::Flavor::FiniteLevel &&
                up.spec()->level() == lo.spec()->level() + 1,
            "tower levels must be consecutive finite levels");
    require(lo.ngens() == up.ngens() && lo.stabilizers() == up.stabilizers(),
            "tower levels must share their generators");
    const u64 p = up.spec()->prime();
    const GroupRingElt step = GroupRingElt::gamma(up.spec()).pow(checked_pow(p, lo.spec()->level()));
    const GroupRingElt trace = geometric_sum(step, p);
    std::vector<Vec> ext_images, norm_images;
    for (std::size_t i = 0; i < lo.ngens(); ++i) {
      ext_images.push_back(up.act(trace, up.generator(i)));
      norm_images.push_back(lo.generator(i));
    }
    tower.ext.push_back(module_map(lo, up, ext_images));
    tower.norm.push_back(module_map(up, lo, norm_images));
    tower.layer_trace.push_back(trace);
    tower.layer_generator.push_back(step);
  }
  tower.levels = std::move(levels);
  return tower;
}

AxiomReport axioms_check(const Tower& tower)
{
  AxiomReport rep{true, {}};
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };
  for (std::size_t n = 0; n + 1 < tower.levels.size(); ++n) {
    const FPModule& lo = tower.levels[n];
    const FPModule& up = tower.levels[n + 1];
    const u64 mod = up.spec()->modulus();
    const u64 p = up.spec()->prime();
    const std::string layer = "layer " + std::to_string(n) + "->" + std::to_string(n + 1);
    for (std::size_t i = 0; i < up.ngens(); ++i) {
      const Vec e = up.generator(i);
      const Vec lhs = tower.ext[n].apply(tower.norm[n].apply(e, mod), mod);
      const Vec rhs = up.act(tower.layer_trace[n], e);
      Vec diff(lhs.size());
      for (std::size_t c = 0; c < diff.size(); ++c)
        diff[c] = (lhs[c] + mod - rhs[c]) % mod;
      if (!up.is_zero(diff))
        fail(layer + ": i o N != Tr on generator " + up.names()[i]);
    }
    for (std::size_t i = 0; i < lo.ngens(); ++i) {
      const Vec e = lo.generator(i);
      const Vec lhs = tower.norm[n].apply(tower.ext[n].apply(e, mod), mod);
      Vec diff(lhs.size());
      for (std::size_t c = 0; c < diff.size(); ++c)
        diff[c] = (lhs[c] + mod - mulmod(p, e[c], mod)) % mod;
      if (!lo.is_zero(diff))
        fail(layer + ": N o i != p on generator " + lo.names()[i]);
    }
    for (const Vec& r : up.relation_form().rows())
      if (!lo.is_zero(tower.norm[n].apply(r, mod))) {
        fail(layer + ": N does not preserve the relations");
        break;
      }
    for (const Vec& r : lo.relation_form().rows())
      if (!up.is_zero(tower.ext[n].apply(r, mod))) {
        fail(layer + ": i does not preserve the relations");
        break;
      }
  }
  return rep;
}

} // namespace sinnott
