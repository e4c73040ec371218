// Shared foundation: exact integers, error codes, deterministic RNG.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace agog {

// All lattice/exponent arithmetic is exact; machine width is never assumed.
using Int = boost::multiprecision::cpp_int;

enum class ErrorCode {
  ok = 0,
  parse_error,
  io_error,
  invalid_argument,
  unknown_element,
  mismatched_context,
  embedding_mismatch,
  too_large,
  budget_exceeded,
  unsupported_variety,
  nonabelian_coefficients,
  constants_not_supported,
  dimension_mismatch,
  empty_algebraic_set,
  inconsistent,
  not_outside_closure,
  model_not_in_variety,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

// splitmix64: tiny deterministic generator, identical on every platform.
// All sampling in the project draws from this; distributions from the
// standard library are avoided because their output is not pinned.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  // uniform in [lo, hi] inclusive
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }

  // derive an independent stream (used for per-worker/per-case seeds)
  Rng fork(std::uint64_t salt) {
    return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ull + 0x7f4a7c15ull));
  }

private:
  std::uint64_t state_;
};

}  // namespace agog
