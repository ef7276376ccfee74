#include "sinnott/prospector.hpp"

#include "sinnott/error.hpp"
#include "sinnott/padic.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace sinnott {

nlohmann::json GuenstigeTuple::to_json() const
{
  return {{"p", p}, {"primes", primes}, {"evidence", evidence}};
}

GuenstigeTuple GuenstigeTuple::from_json(const nlohmann::json& j)
{
  return {j.at("p").get<u64>(), j.at("primes").get<std::vector<u64>>(),
          j.at("evidence").get<std::vector<std::vector<bool>>>()};
}

std::variant<GuenstigeTuple, TupleRejection> check_tuple(const std::vector<u64>& primes, u64 p)
{
  using Kind = TupleRejection::Kind;
  require(p > 2 && is_prime(p), "p must be an odd prime");
  if (primes.size() != p + 1)
    return TupleRejection{Kind::Arity,
                          "expected " + std::to_string(p + 1) + " primes, got " +
                              std::to_string(primes.size()),
                          std::nullopt};
  if (std::set<u64>(primes.begin(), primes.end()).size() != primes.size())
    return TupleRejection{Kind::NotDistinct, "tuple entries must be distinct", std::nullopt};
  for (u64 l : primes) {
    if (!is_prime(l))
      return TupleRejection{Kind::NotPrime, std::to_string(l) + " is not prime", std::nullopt};
    if (l == p)
      return TupleRejection{Kind::EqualsP, "tuple may not contain p itself", std::nullopt};
    if (l % p != 1)
      return TupleRejection{Kind::NotOneModP,
                            std::to_string(l) + " is not 1 mod " + std::to_string(p),
                            std::nullopt};
  }
  GuenstigeTuple t{p, primes, std::vector<std::vector<bool>>(primes.size(),
                                                             std::vector<bool>(primes.size(), false))};
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = 0; j < primes.size(); ++j) {
      if (i == j)
        continue;
      if (!pth_power_residue(static_cast<i64>(primes[i]), primes[j], p))
        return TupleRejection{Kind::Residue,
                              std::to_string(primes[i]) + " is not a p-th power modulo " +
                                  std::to_string(primes[j]) + " (p = " + std::to_string(p) + ")",
                              std::pair{primes[i], primes[j]}};
      t.evidence[i][j] = true;
    }
  return t;
}

GuenstigeTuple verify_tuple(const std::vector<u64>& primes, u64 p)
{
  auto r = check_tuple(primes, p);
  if (auto* t = std::get_if<GuenstigeTuple>(&r))
    return *t;
  const auto& rej = std::get<TupleRejection>(r);
  if (rej.kind == TupleRejection::Kind::Residue || rej.kind == TupleRejection::Kind::NotOneModP)
    throw CheckFailure(rej.message);
  throw InvalidArgument(rej.message);
}

namespace {

struct CliqueSearch {
  const std::vector<std::vector<bool>>& adj;
  std::size_t size;
  std::size_t max_results;
  std::vector<std::size_t> current;
  std::vector<std::vector<std::size_t>> found;

  void extend(const std::vector<std::size_t>& candidates)
  {
    if (found.size() >= max_results)
      return;
    if (current.size() == size) {
      found.push_back(current);
      return;
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      // Not enough candidates left to complete the clique.
      if (current.size() + (candidates.size() - c) < size)
        return;
      const std::size_t v = candidates[c];
      std::vector<std::size_t> next;
      for (std::size_t d = c + 1; d < candidates.size(); ++d)
        if (adj[v][candidates[d]])
          next.push_back(candidates[d]);
      current.push_back(v);
      extend(next);
      current.pop_back();
      if (found.size() >= max_results)
        return;
    }
  }
};

} // namespace

std::vector<GuenstigeTuple> prospect(u64 p, u64 bound, std::size_t max_results)
{
  require(p > 2 && is_prime(p), "p must be an odd prime");
  require(bound >= 2 * p + 1, "search bound must be at least 2p+1");
  std::vector<u64> primes;
  for (u64 l = p + 1; l < bound; l += p)
    if (is_prime(l))
      primes.push_back(l);

  const std::size_t n = primes.size();
  std::vector<std::vector<bool>> residue(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        residue[i][j] = powmod(primes[i] % primes[j], (primes[j] - 1) / p, primes[j]) == 1;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      adj[i][j] = i != j && residue[i][j] && residue[j][i];

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i)
    all[i] = i;
  CliqueSearch search{adj, static_cast<std::size_t>(p + 1), max_results, {}, {}};
  if (max_results > 0)
    search.extend(all);

  std::vector<GuenstigeTuple> out;
  for (const auto& clique : search.found) {
    std::vector<u64> tuple;
    for (std::size_t idx : clique)
      tuple.push_back(primes[idx]);
    out.push_back(verify_tuple(tuple, p));
  }
  return out;
}

} // namespace sinnott
