#ifndef EG3_NAT_HPP
#define EG3_NAT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "eg3/error.hpp"

namespace eg3 {

/// Arbitrary-precision integer used for every residue, modulus and exponent.
/// Values handed to the library are expected to be non-negative; parsing and
/// the public operations reject negative input.
using Nat = boost::multiprecision::cpp_int;

inline bool fits_u64(const Nat& x) {
  return x >= 0 && x <= std::numeric_limits<std::uint64_t>::max();
}

inline std::uint64_t to_u64(const Nat& x) {
  if (!fits_u64(x)) throw error(errc::out_of_range, "value does not fit in 64 bits");
  return x.convert_to<std::uint64_t>();
}

inline void require_non_negative(const Nat& x, std::string_view what) {
  if (x < 0) throw error(errc::invalid_argument, std::string(what) + " must be non-negative");
}

/// Parses a non-negative decimal integer. Leading '+' and signs are rejected.
inline Nat parse_nat(std::string_view text) {
  if (text.empty()) throw error(errc::invalid_argument, "empty integer");
  for (char c : text) {
    if (c < '0' || c > '9')
      throw error(errc::invalid_argument, "not a decimal integer: '" + std::string(text) + "'");
  }
  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = std::min(text.find_first_not_of('0'), text.size() - 1);
  return Nat(std::string(text.substr(first)));
}

inline std::string to_string(const Nat& x) { return x.str(); }

/// Smallest r with r*r >= x.
inline Nat ceil_sqrt(const Nat& x) {
  Nat r = boost::multiprecision::sqrt(x);
  if (r * r < x) ++r;
  return r;
}

/// Uniform draw from [lo, hi]. Works for any range, falling back to bitwise
/// rejection sampling when the span does not fit in 64 bits.
template <class Engine>
Nat uniform_nat(Engine& rng, const Nat& lo, const Nat& hi) {
  if (hi < lo) throw error(errc::invalid_argument, "empty sampling range");
  const Nat span = hi - lo;
  if (fits_u64(span)) {
    std::uniform_int_distribution<std::uint64_t> dist(0, span.convert_to<std::uint64_t>());
    return lo + dist(rng);
  }
  const unsigned bits = boost::multiprecision::msb(span) + 1;
  std::uniform_int_distribution<std::uint64_t> word;
  for (;;) {
    Nat candidate = 0;
    for (unsigned got = 0; got < bits; got += 64) candidate = (candidate << 64) | word(rng);
    candidate &= (Nat(1) << bits) - 1;
    if (candidate <= span) return lo + candidate;
  }
}

}  // namespace eg3

#endif  // EG3_NAT_HPP
