#ifndef EG3_DETAIL_MODARITH_HPP
#define EG3_DETAIL_MODARITH_HPP

// Word-size generic kernels. Every algorithm here is a template over the
// integer type so the public Nat API can drop to a 64-bit fast path whenever
// the modulus fits, and fall back to cpp_int otherwise.

#include <array>
#include <cstdint>
#include <functional>
#include <type_traits>

#include <boost/container_hash/hash.hpp>

#include "eg3/nat.hpp"

namespace eg3::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
inline Nat mul_mod(const Nat& a, const Nat& b, const Nat& m) { return a * b % m; }

template <class Int>
using hash_for = std::conditional_t<std::is_same_v<Int, Nat>, boost::hash<Nat>, std::hash<Int>>;

template <class Int>
bool is_odd(const Int& x) {
  if constexpr (std::is_same_v<Int, Nat>) return boost::multiprecision::bit_test(x, 0);
  else return (x & 1U) != 0;
}

/// Square-and-multiply, right-to-left. `Exp` may be a wider type than `Int`.
template <class Int, class Exp>
Int pow_mod(Int base, Exp exp, const Int& m) {
  Int result = Int(1) % m;
  base %= m;
  while (exp != 0) {
    if (is_odd(exp)) result = mul_mod(result, base, m);
    exp >>= 1;
    if (exp != 0) base = mul_mod(base, base, m);
  }
  return result;
}

template <class Int>
Int gcd(Int a, Int b) {
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

template <class Int>
Int abs_diff(const Int& a, const Int& b) {
  return a > b ? Int(a - b) : Int(b - a);
}

// The first 13 primes are a deterministic witness set below 3.3e24, which
// covers the 64-bit path. Larger inputs get the extended set.
inline constexpr std::array<unsigned, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
inline constexpr std::array<unsigned, 11> kExtraWitnesses = {43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

template <class Int>
bool miller_rabin_round(const Int& n, const Int& d, unsigned s, unsigned witness) {
  Int a = Int(witness) % n;
  if (a == 0) return true;
  Int x = pow_mod(a, d, n);
  const Int minus_one = n - 1;
  if (x == 1 || x == minus_one) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == minus_one) return true;
  }
  return false;
}

template <class Int>
bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while (!is_odd(d)) {
    d >>= 1;
    ++s;
  }
  for (unsigned w : kWitnesses)
    if (!miller_rabin_round(n, d, s, w)) return false;
  if constexpr (std::is_same_v<Int, Nat>) {
    static const Nat deterministic_bound("3317044064679887385961981");
    if (n >= deterministic_bound)
      for (unsigned w : kExtraWitnesses)
        if (!miller_rabin_round(n, d, s, w)) return false;
  }
  return true;
}

/// Brent's variant of Pollard's rho. Returns a nontrivial factor of an odd
/// composite n.
template <class Int>
Int pollard_brent(const Int& n) {
  if (!is_odd(n)) return Int(2);
  constexpr u64 kBatch = 128;
  for (Int c = 1;; ++c) {
    auto step = [&](const Int& v) { return Int((mul_mod(v, v, n) + c) % n); };
    Int y = 2, x = 2, ys = 2, q = 1, g = 1;
    u64 r = 1;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mul_mod(q, abs_diff(x, y), n);
        }
        g = gcd(q, n);
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs_diff(x, ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace eg3::detail

#endif  // EG3_DETAIL_MODARITH_HPP
