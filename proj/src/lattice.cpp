#include "sinnott/lattice.hpp"

#include "sinnott/error.hpp"

#include <algorithm>

namespace sinnott {

namespace {

void axpy(IntVec& y, const mpz_class& a, const IntVec& x)
{
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] += a * x[i];
}

bool is_zero(const IntVec& v)
{
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

} // namespace

std::vector<IntVec> hermite_rows(std::vector<IntVec> rows, std::size_t ncols)
{
  std::vector<IntVec> out;
  std::size_t top = 0;
  for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
    // Euclid on column `col` among rows[top..].
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][col] != 0 &&
            (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
          best = i;
      if (best == rows.size())
        break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0)
          continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
        axpy(rows[i], -q, rows[top]);
        if (rows[i][col] != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (rows[top][col] == 0)
      continue;
    if (rows[top][col] < 0)
      for (auto& x : rows[top])
        x = -x;
    for (std::size_t i = 0; i < top; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
      if (q != 0)
        axpy(rows[i], -q, rows[top]);
    }
    ++top;
  }
  for (std::size_t i = 0; i < top; ++i)
    out.push_back(std::move(rows[i]));
  return out;
}

Lattice Lattice::from_generators(std::size_t rank, std::vector<IntVec> rows)
{
  for (const auto& r : rows)
    require(r.size() == rank, "lattice generator has wrong length");
  auto h = hermite_rows(std::move(rows), rank);
  require(h.size() == rank, "lattice generators do not span a full-rank lattice");
  for (std::size_t i = 0; i < rank; ++i)
    require(h[i][i] != 0, "lattice basis is not square triangular");
  return Lattice(std::move(h));
}

Lattice Lattice::scaled_identity(const IntVec& diagonal)
{
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    IntVec r(diagonal.size(), 0);
    r[i] = diagonal[i];
    rows.push_back(std::move(r));
  }
  return from_generators(diagonal.size(), std::move(rows));
}

mpz_class Lattice::index() const
{
  mpz_class d = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    d *= basis_[i][i];
  return d;
}

IntVec Lattice::reduce(IntVec v) const
{
  require(v.size() == rank(), "vector length does not match lattice rank");
  for (std::size_t j = 0; j < rank(); ++j) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), basis_[j][j].get_mpz_t());
    if (q != 0)
      axpy(v, -q, basis_[j]);
  }
  return v;
}

bool Lattice::contains(IntVec v) const { return is_zero(reduce(std::move(v))); }

bool Lattice::contains(const Lattice& other) const
{
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const IntVec& r) { return contains(r); });
}

Lattice Lattice::sum(const Lattice& other) const
{
  require(rank() == other.rank(), "lattice rank mismatch");
  auto rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  return from_generators(rank(), std::move(rows));
}

Lattice Lattice::intersect(const Lattice& other) const
{
  require(rank() == other.rank(), "lattice rank mismatch");
  const std::size_t r = rank();
  // Rows (x, x) for x in this, (y, 0) for y in other; rows of the echelon
  // form vanishing on the first block are (0, z) with z in the intersection.
  std::vector<IntVec> rows;
  for (const auto& x : basis_) {
    IntVec row(2 * r);
    std::copy(x.begin(), x.end(), row.begin());
    std::copy(x.begin(), x.end(), row.begin() + static_cast<std::ptrdiff_t>(r));
    rows.push_back(std::move(row));
  }
  for (const auto& y : other.basis_) {
    IntVec row(2 * r, 0);
    std::copy(y.begin(), y.end(), row.begin());
    rows.push_back(std::move(row));
  }
  auto h = hermite_rows(std::move(rows), 2 * r);
  std::vector<IntVec> inter;
  for (auto& row : h) {
    bool first_zero = std::all_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(r),
                                  [](const mpz_class& x) { return x == 0; });
    if (first_zero)
      inter.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(r), row.end());
  }
  return from_generators(r, std::move(inter));
}

} // namespace sinnott
