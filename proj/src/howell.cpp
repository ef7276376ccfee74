#include "sinnott/howell.hpp"

#include "sinnott/error.hpp"

#include <algorithm>

namespace sinnott {

namespace {

// Small moduli avoid 128-bit products in the inner loops.
struct ModOps {
  u64 m;
  bool small;
  u64 mul(u64 a, u64 b) const { return small ? a * b % m : mulmod(a, b, m); }
};

int val(u64 x, u64 p, int k)
{
  if (x == 0)
    return k;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// row -= q * piv on the listed support of piv.
void axpy(Vec& row, u64 q, const Vec& piv, const std::vector<std::size_t>& support,
          const ModOps& ops)
{
  if (q == 0)
    return;
  const u64 neg = ops.m - q;
  for (std::size_t c : support)
    row[c] = (row[c] + ops.mul(neg, piv[c])) % ops.m;
}

std::vector<std::size_t> support_from(const Vec& v, std::size_t start)
{
  std::vector<std::size_t> s;
  for (std::size_t c = start; c < v.size(); ++c)
    if (v[c])
      s.push_back(c);
  return s;
}

bool is_zero(const Vec& v)
{
  return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

} // namespace

HowellForm::HowellForm(u64 p, int k, std::size_t ncols, std::vector<Vec> rows)
    : p_(p), k_(k), mod_(checked_pow(p, k)), ncols_(ncols)
{
  const ModOps ops{mod_, mod_ < (u64{1} << 32)};
  std::vector<Vec> pool;
  pool.reserve(rows.size());
  for (auto& r : rows) {
    require(r.size() == ncols, "row length does not match the column count");
    for (auto& x : r)
      x %= mod_;
    if (!is_zero(r))
      pool.push_back(std::move(r));
  }

  for (std::size_t col = 0; col < ncols && !pool.empty(); ++col) {
    // Pivot: smallest valuation in this column, earliest row on ties.
    std::size_t best = pool.size();
    int best_val = k;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const u64 x = pool[i][col];
      if (x == 0)
        continue;
      const int v = val(x, p, k);
      if (v < best_val) {
        best_val = v;
        best = i;
        if (v == 0)
          break;
      }
    }
    if (best == pool.size())
      continue;

    Vec piv = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    const u64 pa = checked_pow(p, best_val);
    const u64 unit = inverse_mod(piv[col] / pa, mod_);
    if (unit != 1)
      for (std::size_t c = col; c < ncols; ++c)
        piv[c] = ops.mul(piv[c], unit);
    const auto support = support_from(piv, col);

    for (auto& r : pool)
      if (r[col])
        axpy(r, r[col] / pa, piv, support, ops);

    if (best_val > 0) {
      Vec ann(ncols, 0);
      const u64 scale = checked_pow(p, k - best_val);
      for (std::size_t c : support)
        ann[c] = ops.mul(piv[c], scale);
      if (!is_zero(ann))
        pool.push_back(std::move(ann));
    }
    std::erase_if(pool, is_zero);

    rows_.push_back(std::move(piv));
    pivot_col_.push_back(col);
    pivot_val_.push_back(best_val);
  }

  // Reduce the entries above each pivot.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t col = pivot_col_[i];
    const u64 pa = checked_pow(p, pivot_val_[i]);
    const auto support = support_from(rows_[i], col);
    for (std::size_t j = 0; j < i; ++j)
      axpy(rows_[j], rows_[j][col] / pa, rows_[i], support, ops);
  }
}

Vec HowellForm::reduce(Vec x) const
{
  require(x.size() == ncols_, "vector length does not match the column count");
  const ModOps ops{mod_, mod_ < (u64{1} << 32)};
  for (auto& v : x)
    v %= mod_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t col = pivot_col_[i];
    const u64 q = x[col] / checked_pow(p_, pivot_val_[i]);
    if (q == 0)
      continue;
    const u64 neg = mod_ - q;
    for (std::size_t c = col; c < ncols_; ++c)
      if (rows_[i][c])
        x[c] = (x[c] + ops.mul(neg, rows_[i][c])) % mod_;
  }
  return x;
}

bool HowellForm::contains(const Vec& x) const
{
  return is_zero(reduce(x));
}

bool HowellForm::contains(const HowellForm& other) const
{
  require(other.mod_ == mod_ && other.ncols_ == ncols_, "span shapes differ");
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const Vec& r) { return contains(r); });
}

long HowellForm::log_cardinality() const
{
  long total = 0;
  for (int a : pivot_val_)
    total += k_ - a;
  return total;
}

nlohmann::json HowellForm::to_json() const
{
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rows_)
    rows.push_back(sparse_json(r));
  return {{"modulus", mod_}, {"ncols", ncols_}, {"pivots", pivot_col_}, {"rows", rows}};
}

bool howell_membership(u64 p, int k, const std::vector<Vec>& span, const Vec& x)
{
  return HowellForm(p, k, x.size(), span).contains(x);
}

nlohmann::json sparse_json(const Vec& v)
{
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i])
      out.push_back({i, v[i]});
  return out;
}

} // namespace sinnott
