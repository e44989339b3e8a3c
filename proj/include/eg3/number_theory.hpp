#ifndef EG3_NUMBER_THEORY_HPP
#define EG3_NUMBER_THEORY_HPP

// Modular arithmetic, factorization, totients, primitive roots, CRT and
// discrete logarithms over Nat. All functions are pure.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "eg3/detail/modarith.hpp"
#include "eg3/error.hpp"
#include "eg3/nat.hpp"

namespace eg3 {

struct prime_power {
  Nat prime;
  unsigned exponent = 1;

  friend bool operator==(const prime_power&, const prime_power&) = default;
};

/// Prime powers in strictly increasing prime order.
using factorization = std::vector<prime_power>;

struct congruence {
  Nat residue;
  Nat modulus;
};

enum class dlog_method { brute_force, baby_step_giant_step, pohlig_hellman, automatic };

/// Orders below this bound are solved by brute force under `automatic`.
inline constexpr std::uint64_t kBruteForceOrderLimit = 1U << 16;

namespace detail {

inline constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;

template <class Int>
Int from_nat(const Nat& x) {
  if constexpr (std::is_same_v<Int, Nat>) return x;
  else return to_u64(x);
}

/// Integer k-th root, rounded down.
inline Nat iroot(const Nat& m, unsigned k) {
  if (m < 2 || k == 1) return m;
  const unsigned bits = boost::multiprecision::msb(m) + 1;
  Nat x = Nat(1) << ((bits + k - 1) / k);
  for (;;) {
    const Nat y = ((k - 1) * x + m / boost::multiprecision::pow(x, k - 1)) / k;
    if (y >= x) return x;
    x = y;
  }
}

/// Writes m = root^k with k maximal.
inline std::pair<Nat, unsigned> perfect_power(const Nat& m) {
  Nat root = m;
  unsigned power = 1;
  for (unsigned k = 2; root >= 4 && k <= boost::multiprecision::msb(root); ++k) {
    const Nat r = iroot(root, k);
    if (boost::multiprecision::pow(r, k) == root) {
      root = r;
      power *= k;
      k = 1;
    }
  }
  return {root, power};
}

template <class Int>
void split_cofactor(const Int& m, std::map<Nat, unsigned>& acc, unsigned multiplicity = 1) {
  if (m == 1) return;
  if (is_prime(m)) {
    acc[Nat(m)] += multiplicity;
    return;
  }
  if (auto [root, power] = perfect_power(Nat(m)); power > 1) {
    split_cofactor(from_nat<Int>(root), acc, multiplicity * power);
    return;
  }
  const Int f = pollard_brent(m);
  const Int rest = m / f;
  if constexpr (std::is_same_v<Int, Nat>) {
    for (const Nat* part : {&f, &rest}) {
      if (fits_u64(*part)) split_cofactor(to_u64(*part), acc, multiplicity);
      else split_cofactor(*part, acc, multiplicity);
    }
  } else {
    split_cofactor(f, acc, multiplicity);
    split_cofactor(rest, acc, multiplicity);
  }
}

template <class Int>
void factor_into(Int rest, std::map<Nat, unsigned>& acc) {
  for (std::uint64_t d = 2; d <= kTrialDivisionLimit; d += (d == 2 ? 1 : 2)) {
    if (Int(d) * d > rest) break;
    if (rest % d != 0) continue;
    unsigned e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    acc[Nat(d)] += e;
  }
  if constexpr (std::is_same_v<Int, Nat>) {
    if (fits_u64(rest)) {
      split_cofactor(to_u64(rest), acc);
      return;
    }
  }
  split_cofactor(rest, acc);
}

template <class Int>
std::optional<Int> dlog_brute_force(const Int& g, const Int& target, const Int& m, const Int& order) {
  Int current = Int(1) % m;
  for (Int e = 0; e < order; ++e) {
    if (current == target) return e;
    current = mul_mod(current, g, m);
  }
  return std::nullopt;
}

template <class Int>
std::optional<Int> dlog_bsgs(const Int& g, const Int& target, const Int& m, const Int& order) {
  const Int steps = from_nat<Int>(ceil_sqrt(Nat(order)));
  std::unordered_map<Int, Int, hash_for<Int>> baby;
  baby.reserve(static_cast<std::size_t>(steps));
  Int current = Int(1) % m;
  for (Int j = 0; j < steps; ++j) {
    baby.emplace(current, j);
    current = mul_mod(current, g, m);
  }
  // g^-steps, written as a positive power since g has order `order`
  const Int giant = pow_mod(g, Int((order - steps % order) % order), m);
  Int gamma = target;
  for (Int i = 0; i * steps < order; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) return Int((i * steps + it->second) % order);
    gamma = mul_mod(gamma, giant, m);
  }
  return std::nullopt;
}

template <class Int>
std::optional<Int> dlog_pohlig_hellman(const Int& g, const Int& target, const Int& m, const Int& order);

}  // namespace detail

inline Nat gcd(const Nat& a, const Nat& b) { return detail::gcd(Nat(a), Nat(b)); }

inline bool is_prime(const Nat& n) {
  if (n < 2) return false;
  return fits_u64(n) ? detail::is_prime(to_u64(n)) : detail::is_prime(n);
}

/// Trial division up to 10^6, then Pollard-Brent with Miller-Rabin.
inline factorization factorize(const Nat& n) {
  if (n < 2) throw error(errc::invalid_argument, "factorize requires n >= 2");
  std::map<Nat, unsigned> acc;
  if (fits_u64(n)) detail::factor_into(to_u64(n), acc);
  else detail::factor_into(n, acc);
  factorization out;
  out.reserve(acc.size());
  for (auto& [p, e] : acc) out.push_back({p, e});
  return out;
}

inline std::vector<Nat> prime_divisors(const Nat& n) {
  std::vector<Nat> out;
  if (n < 2) return out;
  for (auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

inline Nat euler_phi(const Nat& n) {
  if (n < 1) throw error(errc::invalid_argument, "euler_phi requires n >= 1");
  if (n == 1) return 1;
  Nat phi = 1;
  for (const auto& [p, e] : factorize(n)) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

inline Nat iterated_phi(const Nat& n, std::uint64_t k) {
  if (n < 1) throw error(errc::invalid_argument, "iterated_phi requires n >= 1");
  Nat value = n;
  for (std::uint64_t i = 0; i < k && value != 1; ++i) value = euler_phi(value);
  return value;
}

inline Nat mod_pow(const Nat& base, const Nat& exp, const Nat& m) {
  if (m < 2) throw error(errc::invalid_argument, "mod_pow requires modulus >= 2");
  require_non_negative(base, "base");
  require_non_negative(exp, "exponent");
  if (fits_u64(m)) {
    const std::uint64_t mm = to_u64(m);
    const std::uint64_t b = (base % m).convert_to<std::uint64_t>();
    if (fits_u64(exp)) return detail::pow_mod(b, to_u64(exp), mm);
    return detail::pow_mod(b, exp, mm);
  }
  return detail::pow_mod(Nat(base), exp, m);
}

/// Extended Euclid. Returns x in [1, m) with a*x = 1 (mod m).
inline Nat mod_inverse(const Nat& a, const Nat& m) {
  if (m < 2) throw error(errc::invalid_argument, "mod_inverse requires modulus >= 2");
  require_non_negative(a, "operand");
  Nat old_r = a % m, r = m;
  Nat old_s = 1, s = 0;
  while (r != 0) {
    const Nat q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1)
    throw error(errc::not_invertible, to_string(a) + " has no inverse modulo " + to_string(m));
  old_s %= m;
  if (old_s < 0) old_s += m;
  return old_s;
}

inline Nat crt_solve(std::span<const congruence> system) {
  Nat x = 0, modulus = 1;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto& [residue, mi] = system[i];
    if (mi < 2) throw error(errc::invalid_argument, "CRT modulus must be >= 2");
    require_non_negative(residue, "residue");
    for (std::size_t j = 0; j < i; ++j) {
      if (detail::gcd(Nat(system[j].modulus), Nat(mi)) != 1)
        throw error(errc::moduli_not_coprime, to_string(system[j].modulus) + " and " + to_string(mi));
    }
    // x + modulus * t = residue (mod mi)
    const Nat want = (residue % mi - x % mi + mi) % mi;
    const Nat t = want * mod_inverse(modulus % mi, mi) % mi;
    x += modulus * t;
    modulus *= mi;
  }
  return x;
}

inline Nat crt_solve(std::initializer_list<congruence> system) {
  return crt_solve(std::span<const congruence>(system.begin(), system.size()));
}

/// Returns e in [0, order) with g^e = target (mod m). `g` must have
/// multiplicative order exactly `order`.
inline Nat discrete_log(const Nat& g, const Nat& target, const Nat& m, const Nat& order,
                        dlog_method method = dlog_method::automatic) {
  if (m < 2) throw error(errc::invalid_argument, "discrete_log requires modulus >= 2");
  if (order < 1) throw error(errc::invalid_argument, "discrete_log requires order >= 1");
  require_non_negative(g, "generator");
  require_non_negative(target, "target");
  if (method == dlog_method::automatic)
    method = order < kBruteForceOrderLimit ? dlog_method::brute_force : dlog_method::pohlig_hellman;

  auto run = [&]<class Int>(const Int& gg, const Int& tt, const Int& mm, const Int& oo) -> std::optional<Int> {
    switch (method) {
      case dlog_method::brute_force: return detail::dlog_brute_force(gg, tt, mm, oo);
      case dlog_method::baby_step_giant_step: return detail::dlog_bsgs(gg, tt, mm, oo);
      default: return detail::dlog_pohlig_hellman(gg, tt, mm, oo);
    }
  };

  const Nat gm = g % m, tm = target % m;
  std::optional<Nat> found;
  if (fits_u64(m)) {
    if (auto r = run(to_u64(gm), to_u64(tm), to_u64(m), to_u64(order))) found = Nat(*r);
  } else {
    found = run(gm, tm, m, order);
  }
  if (!found || mod_pow(gm, *found, m) != tm)
    throw error(errc::not_in_subgroup,
                to_string(target) + " is not a power of " + to_string(g) + " modulo " + to_string(m));
  return *found;
}

/// True iff U(Z_n) is cyclic: n in {1, 2, 4, p^k, 2p^k} with p an odd prime.
inline bool is_cyclic_unit_group(const Nat& n) {
  if (n < 1) return false;
  if (n == 1 || n == 2 || n == 4) return true;
  Nat odd = n;
  if (!detail::is_odd(odd)) {
    odd >>= 1;
    if (!detail::is_odd(odd)) return false;
  }
  if (odd == 1) return false;
  return factorize(odd).size() == 1;
}

/// True iff g has multiplicative order exactly `order` modulo m, given the
/// distinct primes dividing `order`.
inline bool has_order(const Nat& g, const Nat& order, const Nat& m, std::span<const Nat> order_primes) {
  if (mod_pow(g, order, m) != 1 % m) return false;
  for (const Nat& q : order_primes)
    if (mod_pow(g, order / q, m) == 1) return false;
  return true;
}

inline Nat multiplicative_order(const Nat& g, const Nat& m) {
  if (m < 2) throw error(errc::invalid_argument, "multiplicative_order requires modulus >= 2");
  if (gcd(Nat(g % m), m) != 1)
    throw error(errc::not_invertible, to_string(g) + " is not a unit modulo " + to_string(m));
  Nat order = euler_phi(m);
  for (const Nat& q : prime_divisors(order)) {
    while (order % q == 0 && mod_pow(g, order / q, m) == 1) order /= q;
  }
  return order;
}

/// Smallest generator of U(Z_n); 1 for n in {1, 2}.
inline Nat find_primitive_root(const Nat& n) {
  if (!is_cyclic_unit_group(n))
    throw error(errc::not_cyclic, "U(Z_" + to_string(n) + ") is not cyclic");
  if (n <= 2) return 1;
  const Nat phi = euler_phi(n);
  const std::vector<Nat> primes = prime_divisors(phi);
  for (Nat g = 2; g < n; ++g) {
    if (detail::gcd(Nat(g), Nat(n)) != 1) continue;
    if (has_order(g, phi, n, primes)) return g;
  }
  throw error(errc::not_cyclic, "no primitive root modulo " + to_string(n));
}

template <class Int>
std::optional<Int> detail::dlog_pohlig_hellman(const Int& g, const Int& target, const Int& m,
                                               const Int& order) {
  if (order == 1) return target == Int(1) % m ? std::optional<Int>(Int(0)) : std::nullopt;
  std::vector<congruence> parts;
  for (const auto& [prime, e] : factorize(Nat(order))) {
    const Int q = from_nat<Int>(prime);
    Int qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;
    const Int cofactor = order / qe;
    const Int sub_g = pow_mod(g, cofactor, m);
    const Int sub_t = pow_mod(target, cofactor, m);
    const Int gamma = pow_mod(sub_g, Int(qe / q), m);
    Int x = 0, qk = 1;
    for (unsigned k = 0; k < e; ++k) {
      const Int undo = pow_mod(sub_g, Int((qe - x) % qe), m);
      const Int digit_target = pow_mod(mul_mod(undo, sub_t, m), Int(qe / (qk * q)), m);
      auto digit = q < kBruteForceOrderLimit ? dlog_brute_force(gamma, digit_target, m, q)
                                             : dlog_bsgs(gamma, digit_target, m, q);
      if (!digit) return std::nullopt;
      x += *digit * qk;
      qk *= q;
    }
    parts.push_back({Nat(x), Nat(qe)});
  }
  return from_nat<Int>(crt_solve(parts));
}

}  // namespace eg3

#endif  // EG3_NUMBER_THEORY_HPP
