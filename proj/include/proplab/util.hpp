#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "proplab/errors.hpp"

namespace proplab {

/// Deterministic 64-bit generator (splitmix64).  All randomized sampling in
/// the library and the test suites goes through this, so runs are
/// reproducible from a seed alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n).  n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

std::string to_hex(const std::string& bytes);
std::string from_hex(const std::string& hex);  // throws SyntaxError

bool is_prime(std::int64_t n);

/// log_p(n) when n is an exact power of p; throws otherwise.
int exact_log(std::int64_t p, std::int64_t n);

std::int64_t ipow(std::int64_t base, int exp);  // throws on overflow

std::string join(const std::vector<std::string>& parts, const std::string& sep);

std::int64_t parse_int(const std::string& text);  // throws SyntaxError

}  // namespace proplab
