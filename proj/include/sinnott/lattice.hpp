#pragma once

#include <gmpxx.h>

#include <vector>

namespace sinnott {

using IntVec = std::vector<mpz_class>;

/// Full-rank sublattice of Z^r kept in Hermite normal form: upper
/// triangular basis, positive pivots, entries above a pivot reduced into
/// [0, pivot).
class Lattice {
public:
  /// Lattice generated by `rows`; throws InvalidArgument unless full rank.
  static Lattice from_generators(std::size_t rank, std::vector<IntVec> rows);
  static Lattice scaled_identity(const IntVec& diagonal);

  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVec>& basis() const { return basis_; }

  /// [Z^r : L], the product of the pivots.
  mpz_class index() const;
  bool contains(IntVec v) const;
  /// Canonical coset representative of v modulo L.
  IntVec reduce(IntVec v) const;

  Lattice sum(const Lattice& other) const;
  Lattice intersect(const Lattice& other) const;
  bool contains(const Lattice& other) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

private:
  explicit Lattice(std::vector<IntVec> basis) : basis_(std::move(basis)) {}
  std::vector<IntVec> basis_;
};

/// Row Hermite normal form of an arbitrary integer matrix; zero rows dropped.
std::vector<IntVec> hermite_rows(std::vector<IntVec> rows, std::size_t ncols);

} // namespace sinnott
