#pragma once

#include "sinnott/modular.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sinnott {

/// p+1 primes l_i = 1 mod p, each a p-th power residue modulo every other.
/// evidence[i][j] (i != j) records that l_i is a p-th power mod l_j.
struct GuenstigeTuple {
  u64 p;
  std::vector<u64> primes;
  std::vector<std::vector<bool>> evidence;

  nlohmann::json to_json() const;
  static GuenstigeTuple from_json(const nlohmann::json& j);
  friend bool operator==(const GuenstigeTuple&, const GuenstigeTuple&) = default;
};

/// Why a candidate tuple was rejected.
struct TupleRejection {
  enum class Kind { Arity, NotDistinct, NotPrime, EqualsP, NotOneModP, Residue } kind;
  std::string message;
  /// For Kind::Residue: the ordered pair (l_i, l_j) with l_i not a p-th power mod l_j.
  std::optional<std::pair<u64, u64>> pair;
};

/// Throws InvalidArgument (arity / primality problems) or CheckFailure
/// (congruence or residue failure); the what() string names the first
/// offending entry or ordered pair.
GuenstigeTuple verify_tuple(const std::vector<u64>& primes, u64 p);

/// Non-throwing variant used by the CLI and the tests.
std::variant<GuenstigeTuple, TupleRejection> check_tuple(const std::vector<u64>& primes, u64 p);

/// Guenstige (p+1)-tuples with every prime below `bound`, lexicographically
/// smallest first, at most `max_results` of them.
std::vector<GuenstigeTuple> prospect(u64 p, u64 bound, std::size_t max_results);

} // namespace sinnott
