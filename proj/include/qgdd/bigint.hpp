#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qgdd {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

// Throws std::overflow_error if x does not fit.
inline std::uint64_t to_u64(const BigInt& x) {
  if (x < 0 || x > BigInt(UINT64_MAX)) throw std::overflow_error("BigInt does not fit in 64 bits");
  return x.convert_to<std::uint64_t>();
}

// Integer power for small exact cases; overflow is the caller's concern.
constexpr std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace qgdd
