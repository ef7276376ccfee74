#pragma once

#include <stdexcept>
#include <string>

namespace sinnott {

/// Caller violated a documented precondition (bad arguments, wrong shape).
class InvalidArgument : public std::invalid_argument {
public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// A mathematical verification failed: the inputs are well formed but a
/// claimed identity, congruence or membership does not hold.
class CheckFailure : public std::runtime_error {
public:
  explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Requested result needs more p-adic or T-adic precision than available.
class PrecisionError : public std::runtime_error {
public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

template <class E = InvalidArgument>
inline void require(bool cond, const std::string& msg)
{
  if (!cond)
    throw E(msg);
}

} // namespace sinnott
