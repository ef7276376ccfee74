#pragma once
// Row spans over Z/p^k in Howell normal form.

#include "sinnott/modular.hpp"

#include <json.hpp>

#include <cstddef>
#include <vector>

namespace sinnott {

using Vec = std::vector<u64>;

/// Echelon basis of a Z/p^k row span with the Howell property: any span
/// vector vanishing on the first j columns is a combination of the rows whose
/// pivot lies at column >= j.  Pivots are normalised to p^a, entries above a
/// pivot p^a are reduced into [0, p^a).
class HowellForm {
public:
  HowellForm(u64 p, int k, std::size_t ncols, std::vector<Vec> rows);

  u64 prime() const { return p_; }
  int precision() const { return k_; }
  u64 modulus() const { return mod_; }
  std::size_t ncols() const { return ncols_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivot_col_; }
  /// p-adic valuation of each pivot.
  const std::vector<int>& pivot_valuations() const { return pivot_val_; }

  /// Canonical representative of x modulo the span (zero iff x is in the span).
  Vec reduce(Vec x) const;
  bool contains(const Vec& x) const;
  /// log_p of the number of elements of the span.
  long log_cardinality() const;
  bool contains(const HowellForm& other) const;

  friend bool operator==(const HowellForm& a, const HowellForm& b)
  {
    return a.mod_ == b.mod_ && a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
  }

  nlohmann::json to_json() const;

private:
  u64 p_;
  int k_;
  u64 mod_;
  std::size_t ncols_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<int> pivot_val_;
};

/// x in the Z/p^k-span of `span`.
bool howell_membership(u64 p, int k, const std::vector<Vec>& span, const Vec& x);

/// Sparse view of a vector: [[index, value], ...] over its nonzero entries.
nlohmann::json sparse_json(const Vec& v);

} // namespace sinnott
