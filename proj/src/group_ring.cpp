#include "sinnott/group_ring.hpp"

#include "sinnott/error.hpp"

#include <algorithm>
#include <gmpxx.h>
#include <map>
#include <set>

namespace sinnott {

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<u64> orders) : orders_(std::move(orders))
{
  std::erase(orders_, 1);
  u64 size = 1;
  for (u64 n : orders_) {
    require(n >= 2, "cyclic factor orders must be positive");
    size *= n;
    require(size <= 4096, "group too large for the group-ring layer");
  }
  size_ = static_cast<std::uint32_t>(size);
  mul_.resize(static_cast<std::size_t>(size_) * size_);
  inv_.resize(size_);
  for (std::uint32_t a = 0; a < size_; ++a) {
    auto da = digits(a);
    for (std::uint32_t b = 0; b < size_; ++b) {
      auto db = digits(b);
      for (std::size_t i = 0; i < orders_.size(); ++i)
        db[i] = (da[i] + db[i]) % orders_[i];
      mul_[a * size_ + b] = index(db);
    }
    for (std::size_t i = 0; i < orders_.size(); ++i)
      da[i] = (orders_[i] - da[i]) % orders_[i];
    inv_[a] = index(da);
  }
}

std::vector<u64> FiniteAbelianGroup::digits(std::uint32_t g) const
{
  std::vector<u64> d(orders_.size());
  u64 rest = g;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    d[i] = rest % orders_[i];
    rest /= orders_[i];
  }
  return d;
}

std::uint32_t FiniteAbelianGroup::index(const std::vector<u64>& digits) const
{
  require(digits.size() == orders_.size(), "wrong number of group coordinates");
  u64 idx = 0;
  u64 stride = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    idx += (digits[i] % orders_[i]) * stride;
    stride *= orders_[i];
  }
  return static_cast<std::uint32_t>(idx);
}

std::uint32_t FiniteAbelianGroup::pow(std::uint32_t a, i64 e) const
{
  const u64 ord = element_order(a);
  u64 ee = reduce_signed(e, ord);
  std::uint32_t r = 0;
  for (u64 i = 0; i < ee; ++i)
    r = mul(r, a);
  return r;
}

std::uint64_t FiniteAbelianGroup::element_order(std::uint32_t a) const
{
  u64 n = 1;
  for (std::uint32_t x = a; x != 0; x = mul(x, a))
    ++n;
  return n;
}

Subgroup FiniteAbelianGroup::closure(const std::vector<std::uint32_t>& gens) const
{
  std::vector<bool> in(size_, false);
  in[0] = true;
  std::vector<std::uint32_t> elems{0};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::uint32_t g : gens) {
      require(g < size_, "group element out of range");
      std::uint32_t y = mul(elems[i], g);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

Subgroup FiniteAbelianGroup::whole() const
{
  Subgroup all(size_);
  for (std::uint32_t g = 0; g < size_; ++g)
    all[g] = g;
  return all;
}

std::vector<Subgroup> FiniteAbelianGroup::order_p_subgroups(u64 p) const
{
  std::vector<Subgroup> out;
  std::set<Subgroup> seen;
  for (std::uint32_t g = 1; g < size_; ++g)
    if (element_order(g) == p) {
      Subgroup s = closure({g});
      if (seen.insert(s).second)
        out.push_back(std::move(s));
    }
  return out;
}

std::vector<std::uint32_t> FiniteAbelianGroup::coset_index(const Subgroup& s) const
{
  constexpr std::uint32_t unset = ~std::uint32_t{0};
  std::vector<std::uint32_t> coset(size_, unset);
  std::uint32_t next = 0;
  for (std::uint32_t g = 0; g < size_; ++g)
    if (coset[g] == unset) {
      for (std::uint32_t h : s)
        coset[mul(g, h)] = next;
      ++next;
    }
  return coset;
}

std::string FiniteAbelianGroup::element_name(std::uint32_t g) const
{
  std::string s = "(";
  auto d = digits(g);
  for (std::size_t i = 0; i < d.size(); ++i)
    s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// RingSpec

namespace {

u64 binom_mod(u64 n, u64 j, u64 mod)
{
  // Exact binomial coefficient, then reduced.
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, j);
  mpz_class r = b % mpz_class(static_cast<unsigned long>(mod));
  return r.get_ui();
}

} // namespace

RingSpec::RingSpec(u64 p, int k, Flavor flavor, int degree, int level, std::vector<u64> group)
    : p_(p), k_(k), mod_(0), flavor_(flavor), degree_(degree), level_(level),
      group_(std::move(group))
{
  require(p > 2 && is_prime(p), "p must be an odd prime");
  require(k >= 1, "precision k must be positive");
  mod_ = checked_pow(p, k);
  require(mod_ < (u64{1} << 62), "p^k too large");
  require(degree >= 1, "ring degree must be positive");
  if (flavor == Flavor::FiniteLevel) {
    // (1+T)^{p^n} - 1 = T^D + sum_{0<j<D} binom(D, j) T^j.
    tail_.assign(degree, 0);
    for (int j = 1; j < degree; ++j)
      tail_[j] = (mod_ - binom_mod(degree, j, mod_)) % mod_;
  }
}

SpecPtr RingSpec::truncated(u64 p, int k, int d, std::vector<u64> group)
{
  return SpecPtr(new RingSpec(p, k, Flavor::Truncated, d, -1, std::move(group)));
}

SpecPtr RingSpec::finite_level(u64 p, int k, int n, std::vector<u64> group)
{
  require(n >= 0 && n <= 6, "tower level out of range");
  const u64 degree = checked_pow(p, n);
  require(degree <= 4096, "tower level too large");
  return SpecPtr(new RingSpec(p, k, Flavor::FiniteLevel, static_cast<int>(degree), n,
                              std::move(group)));
}

void RingSpec::reduce_poly(std::vector<u64>& poly) const
{
  const std::size_t D = static_cast<std::size_t>(degree_);
  if (flavor_ == Flavor::FiniteLevel) {
    for (std::size_t t = poly.size(); t-- > D;) {
      const u64 c = poly[t] % mod_;
      if (c == 0)
        continue;
      for (std::size_t j = 1; j < D; ++j)
        if (tail_[j])
          poly[t - D + j] = (poly[t - D + j] + mulmod(c, tail_[j], mod_)) % mod_;
    }
  }
  poly.resize(D, 0);
  for (auto& c : poly)
    c %= mod_;
}

SpecPtr RingSpec::with_group(std::vector<u64> group) const
{
  return SpecPtr(new RingSpec(p_, k_, flavor_, degree_, level_, std::move(group)));
}

SpecPtr RingSpec::with_degree(int d) const
{
  require(flavor_ == Flavor::Truncated, "only T^d truncations change degree");
  return SpecPtr(new RingSpec(p_, k_, flavor_, d, -1, group_.orders()));
}

std::string RingSpec::describe() const
{
  std::string s = "(Z/" + std::to_string(p_) + "^" + std::to_string(k_) + ")[T]/";
  s += flavor_ == Flavor::Truncated ? "(T^" + std::to_string(degree_) + ")"
                                    : "((1+T)^" + std::to_string(degree_) + "-1)";
  if (group_.size() > 1) {
    s += "[";
    for (std::size_t i = 0; i < group_.orders().size(); ++i)
      s += (i ? " x Z/" : "Z/") + std::to_string(group_.orders()[i]);
    s += "]";
  }
  return s;
}

nlohmann::json RingSpec::modulus_json() const
{
  if (flavor_ == Flavor::Truncated)
    return {{"kind", "truncated"}, {"degree", degree_}};
  return {{"kind", "finite_level"}, {"level", level_}, {"degree", degree_}};
}

bool operator==(const RingSpec& a, const RingSpec& b)
{
  return a.p_ == b.p_ && a.k_ == b.k_ && a.flavor_ == b.flavor_ && a.degree_ == b.degree_ &&
         a.level_ == b.level_ && a.group_ == b.group_;
}

// ---------------------------------------------------------------------------
// GroupRingElt

GroupRingElt::GroupRingElt(SpecPtr spec) : spec_(std::move(spec))
{
  require(spec_ != nullptr, "missing ring spec");
  c_.assign(spec_->dimension(), 0);
}

GroupRingElt GroupRingElt::scalar(SpecPtr spec, i64 c)
{
  GroupRingElt x(std::move(spec));
  x.c_[0] = reduce_signed(c, x.spec_->modulus());
  return x;
}

GroupRingElt GroupRingElt::group_element(SpecPtr spec, std::uint32_t g)
{
  GroupRingElt x(std::move(spec));
  require(g < x.spec_->group().size(), "group element out of range");
  x.c_[g] = 1 % x.spec_->modulus();
  return x;
}

GroupRingElt GroupRingElt::T(SpecPtr spec)
{
  return polynomial(std::move(spec), {0, 1});
}

GroupRingElt GroupRingElt::gamma(SpecPtr spec)
{
  return polynomial(std::move(spec), {1, 1});
}

GroupRingElt GroupRingElt::polynomial(SpecPtr spec, const std::vector<i64>& coeffs)
{
  GroupRingElt x(std::move(spec));
  const u64 m = x.spec_->modulus();
  std::vector<u64> poly(std::max<std::size_t>(coeffs.size(), x.spec_->degree()), 0);
  for (std::size_t t = 0; t < coeffs.size(); ++t)
    poly[t] = reduce_signed(coeffs[t], m);
  x.spec_->reduce_poly(poly);
  const std::uint32_t n = x.spec_->group().size();
  for (std::size_t t = 0; t < poly.size(); ++t)
    x.c_[t * n] = poly[t];
  return x;
}

void GroupRingElt::set_coefficient(int t, std::uint32_t g, u64 v)
{
  require(t >= 0 && t < spec_->degree() && g < spec_->group().size(), "coefficient out of range");
  c_[t * spec_->group().size() + g] = v % spec_->modulus();
}

bool GroupRingElt::is_zero() const
{
  return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

std::vector<u64> GroupRingElt::augmentation() const
{
  const std::uint32_t n = spec_->group().size();
  const u64 m = spec_->modulus();
  std::vector<u64> out(spec_->degree(), 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    out[i / n] = (out[i / n] + c_[i]) % m;
  return out;
}

std::vector<u64> GroupRingElt::constant_terms() const
{
  return {c_.begin(), c_.begin() + spec_->group().size()};
}

GroupRingElt GroupRingElt::pow(u64 e) const
{
  GroupRingElt result = scalar(spec_, 1);
  GroupRingElt base = *this;
  while (e) {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

GroupRingElt GroupRingElt::scaled(u64 c) const
{
  GroupRingElt x = *this;
  const u64 m = spec_->modulus();
  c %= m;
  for (auto& v : x.c_)
    v = mulmod(v, c, m);
  return x;
}

namespace {

void require_same_ring(const GroupRingElt& a, const GroupRingElt& b)
{
  require(a.spec() == b.spec() || *a.spec() == *b.spec(), "ring mismatch: " +
                                                               a.spec()->describe() + " vs " +
                                                               b.spec()->describe());
}

} // namespace

GroupRingElt operator+(const GroupRingElt& a, const GroupRingElt& b)
{
  require_same_ring(a, b);
  GroupRingElt x = a;
  const u64 m = a.spec_->modulus();
  for (std::size_t i = 0; i < x.c_.size(); ++i)
    x.c_[i] = (x.c_[i] + b.c_[i]) % m;
  return x;
}

GroupRingElt operator-(const GroupRingElt& a, const GroupRingElt& b)
{
  require_same_ring(a, b);
  GroupRingElt x = a;
  const u64 m = a.spec_->modulus();
  for (std::size_t i = 0; i < x.c_.size(); ++i)
    x.c_[i] = (x.c_[i] + m - b.c_[i]) % m;
  return x;
}

GroupRingElt GroupRingElt::operator-() const
{
  return zero(spec_) - *this;
}

GroupRingElt operator*(const GroupRingElt& a, const GroupRingElt& b)
{
  require_same_ring(a, b);
  const RingSpec& s = *a.spec_;
  const std::uint32_t n = s.group().size();
  const std::size_t D = static_cast<std::size_t>(s.degree());
  const u64 m = s.modulus();
  const bool truncated = s.flavor() == RingSpec::Flavor::Truncated;
  const std::size_t tmax = truncated ? D : 2 * D - 1;

  struct Term {
    std::size_t t;
    std::uint32_t g;
    u64 v;
  };
  std::vector<Term> bt;
  for (std::size_t i = 0; i < b.c_.size(); ++i)
    if (b.c_[i])
      bt.push_back({i / n, static_cast<std::uint32_t>(i % n), b.c_[i]});

  // Per group element: a polynomial of length tmax.
  std::vector<std::vector<u64>> acc(n, std::vector<u64>(tmax, 0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (!a.c_[i])
      continue;
    const std::size_t t1 = i / n;
    const std::uint32_t g1 = static_cast<std::uint32_t>(i % n);
    for (const Term& term : bt) {
      const std::size_t t = t1 + term.t;
      if (t >= tmax)
        continue;
      u64& slot = acc[s.group().mul(g1, term.g)][t];
      slot = (slot + mulmod(a.c_[i], term.v, m)) % m;
    }
  }
  GroupRingElt x(a.spec_);
  for (std::uint32_t g = 0; g < n; ++g) {
    s.reduce_poly(acc[g]);
    for (std::size_t t = 0; t < D; ++t)
      x.c_[t * n + g] = acc[g][t];
  }
  return x;
}

bool operator==(const GroupRingElt& a, const GroupRingElt& b)
{
  return *a.spec_ == *b.spec_ && a.c_ == b.c_;
}

GroupRingElt GroupRingElt::truncated(int d) const
{
  require(spec_->flavor() == RingSpec::Flavor::Truncated, "truncation needs the T^d flavor");
  require(d >= 1 && d <= spec_->degree(), "can only lower the truncation degree");
  GroupRingElt x(spec_->with_degree(d));
  std::copy(c_.begin(), c_.begin() + x.c_.size(), x.c_.begin());
  return x;
}

GroupRingElt GroupRingElt::projected(const SpecPtr& lower) const
{
  require(spec_->flavor() == RingSpec::Flavor::FiniteLevel &&
              lower->flavor() == RingSpec::Flavor::FiniteLevel,
          "projection between tower levels needs the finite flavor");
  require(lower->level() <= spec_->level() && lower->prime() == spec_->prime() &&
              lower->precision() <= spec_->precision() && lower->group() == spec_->group(),
          "projection target is not a quotient ring");
  const std::uint32_t n = spec_->group().size();
  GroupRingElt x(lower);
  for (std::uint32_t g = 0; g < n; ++g) {
    std::vector<u64> poly(spec_->degree());
    for (int t = 0; t < spec_->degree(); ++t)
      poly[t] = c_[t * n + g];
    lower->reduce_poly(poly);
    for (int t = 0; t < lower->degree(); ++t)
      x.c_[t * n + g] = poly[t];
  }
  return x;
}

GroupRingElt GroupRingElt::lifted(const SpecPtr& upper) const
{
  require(upper->flavor() == spec_->flavor() && upper->degree() >= spec_->degree() &&
              upper->prime() == spec_->prime() && upper->precision() == spec_->precision() &&
              upper->group() == spec_->group(),
          "lift target must extend the ring");
  GroupRingElt x(upper);
  std::copy(c_.begin(), c_.end(), x.c_.begin());
  return x;
}

nlohmann::json GroupRingElt::to_json() const
{
  const std::uint32_t n = spec_->group().size();
  nlohmann::json coeffs = nlohmann::json::object();
  for (std::uint32_t g = 0; g < n; ++g) {
    std::vector<u64> poly(spec_->degree());
    bool nonzero = false;
    for (int t = 0; t < spec_->degree(); ++t) {
      poly[t] = c_[t * n + g];
      nonzero = nonzero || poly[t];
    }
    if (nonzero)
      coeffs[spec_->group().element_name(g)] = poly;
  }
  return {{"p", spec_->prime()},
          {"k", spec_->precision()},
          {"modulus", spec_->modulus_json()},
          {"group", spec_->group().orders()},
          {"coefficients", coeffs}};
}

GroupRingElt GroupRingElt::from_json(const nlohmann::json& j)
{
  const u64 p = j.at("p").get<u64>();
  const int k = j.at("k").get<int>();
  const auto& mod = j.at("modulus");
  const auto group = j.at("group").get<std::vector<u64>>();
  SpecPtr spec = mod.at("kind") == "truncated"
                     ? RingSpec::truncated(p, k, mod.at("degree").get<int>(), group)
                     : RingSpec::finite_level(p, k, mod.at("level").get<int>(), group);
  std::map<std::string, std::uint32_t> names;
  for (std::uint32_t g = 0; g < spec->group().size(); ++g)
    names[spec->group().element_name(g)] = g;
  GroupRingElt x(spec);
  for (const auto& [name, poly] : j.at("coefficients").items()) {
    auto it = names.find(name);
    require(it != names.end(), "unknown group element " + name);
    auto v = poly.get<std::vector<u64>>();
    require(v.size() == static_cast<std::size_t>(spec->degree()), "coefficient list length");
    for (int t = 0; t < spec->degree(); ++t)
      x.set_coefficient(t, it->second, v[t]);
  }
  return x;
}

std::string GroupRingElt::to_string() const
{
  const std::uint32_t n = spec_->group().size();
  std::string s;
  for (std::uint32_t g = 0; g < n; ++g)
    for (int t = 0; t < spec_->degree(); ++t) {
      const u64 v = c_[t * n + g];
      if (!v)
        continue;
      if (!s.empty())
        s += " + ";
      s += std::to_string(v);
      if (t == 1)
        s += "*T";
      else if (t > 1)
        s += "*T^" + std::to_string(t);
      if (g)
        s += "*g" + spec_->group().element_name(g);
    }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Special elements

int frobenius_precision_needed(const RingSpec& spec)
{
  if (spec.flavor() == RingSpec::Flavor::FiniteLevel)
    return std::max(spec.level(), 1);
  int extra = 0;
  for (u64 x = static_cast<u64>(spec.degree()) - 1; x >= spec.prime(); x /= spec.prime())
    ++extra;
  return spec.precision() + extra;
}

GroupRingElt one_minus_frob_inv(const PadicInt& c, const SpecPtr& spec)
{
  require(c.prime() == spec->prime(), "exponent and ring use different primes");
  const int need = frobenius_precision_needed(*spec);
  require<PrecisionError>(c.precision() >= need,
                          "frobenius exponent known mod p^" + std::to_string(c.precision()) +
                              ", ring needs p^" + std::to_string(need));
  // (1+T)^{p^need} = 1 in the ring, so -c may be taken modulo p^need.
  const u64 period = checked_pow(spec->prime(), need);
  const u64 e = (period - c.reduced(need).value()) % period;
  const GroupRingElt one = GroupRingElt::scalar(spec, 1);
  return one - GroupRingElt::gamma(spec).pow(e);
}

GroupRingElt divide_by_T(const GroupRingElt& x)
{
  const RingSpec& s = *x.spec();
  require(s.flavor() == RingSpec::Flavor::Truncated, "division by T needs the T^d flavor");
  require<PrecisionError>(s.degree() >= 2, "no T-adic precision left to divide by T");
  for (u64 v : x.constant_terms())
    require<CheckFailure>(v == 0, "element is not divisible by T (nonzero constant term)");
  const std::uint32_t n = s.group().size();
  GroupRingElt y(s.with_degree(s.degree() - 1));
  for (int t = 0; t + 1 < s.degree(); ++t)
    for (std::uint32_t g = 0; g < n; ++g)
      y.set_coefficient(t, g, x.coefficient(t + 1, g));
  return y;
}

GroupRingElt trace_element(const Subgroup& h, const SpecPtr& spec)
{
  GroupRingElt x(spec);
  for (std::uint32_t g : h)
    x = x + GroupRingElt::group_element(spec, g);
  return x;
}

GroupRingElt geometric_sum(const GroupRingElt& g, u64 n)
{
  // S(2a) = S(a)(1 + g^a), S(a+1) = 1 + g S(a).
  GroupRingElt s = GroupRingElt::zero(g.spec());
  GroupRingElt ga = GroupRingElt::scalar(g.spec(), 1); // g^a for the current a
  const GroupRingElt one = GroupRingElt::scalar(g.spec(), 1);
  int top = 63;
  while (top >= 0 && !((n >> top) & 1))
    --top;
  for (int bit = top; bit >= 0; --bit) {
    s = s * (one + ga);
    ga = ga * ga;
    if ((n >> bit) & 1) {
      s = one + g * s;
      ga = ga * g;
    }
  }
  return s;
}

std::vector<i64> formal_identity_defect(const FiniteAbelianGroup& g, u64 p)
{
  std::vector<i64> defect(g.size(), 0);
  for (const Subgroup& h : g.order_p_subgroups(p))
    for (std::uint32_t x : h)
      ++defect[x];
  for (std::uint32_t x = 0; x < g.size(); ++x)
    --defect[x];
  return defect;
}

bool formal_identity_check(u64 p, const SpecPtr& spec)
{
  require(spec->group().orders() == std::vector<u64>{p, p},
          "formal identity needs G = (Z/p)^2, got " + spec->describe());
  const auto defect = formal_identity_defect(spec->group(), p);
  bool exact = defect[0] == static_cast<i64>(p);
  for (std::size_t x = 1; x < defect.size(); ++x)
    exact = exact && defect[x] == 0;

  GroupRingElt lhs = -trace_element(spec->group().whole(), spec);
  for (const Subgroup& h : spec->group().order_p_subgroups(p))
    lhs = lhs + trace_element(h, spec);
  return exact && lhs == GroupRingElt::scalar(spec, static_cast<i64>(p));
}

bool is_prime_to_p(const GroupRingElt& x)
{
  const u64 p = x.spec()->prime();
  return std::any_of(x.coefficients().begin(), x.coefficients().end(),
                     [p](u64 v) { return v % p != 0; });
}

} // namespace sinnott
