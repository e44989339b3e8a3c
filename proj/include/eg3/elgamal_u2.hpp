#ifndef EG3_ELGAMAL_U2_HPP
#define EG3_ELGAMAL_U2_HPP

// ElGamal over the second group of units U^2(Z_n).
//
// Case 1: U(Z_n) and U(Z_phi(n)) are cyclic. Messages are generators of
// U(Z_n); exponents live modulo phi(n).
//
// Case 2: n = 3p with p an odd prime > 3, so U(Z_n) is not cyclic. All
// exponent arithmetic happens in the prime component: theta1 generates
// U(Z_p) and exponents live modulo phi(p) = p - 1. Messages are the lifts
// x = 2 (mod 3), x = m_p (mod p) of generators m_p of U(Z_p). Every exponent
// the scheme raises to is odd, so the residue 2 mod 3 is preserved and the
// arithmetic can be carried out modulo n.

#include <algorithm>
#include <utility>
#include <vector>

#include "eg3/error.hpp"
#include "eg3/nat.hpp"
#include "eg3/number_theory.hpp"
#include "eg3/unit_groups.hpp"

namespace eg3 {

enum class u2_case { case1, case2 };

/// Everything both parties derive from (case, n).
struct u2_setting {
  u2_case kind = u2_case::case1;
  Nat n;          // messages and ciphertext delta live mod n
  Nat component;  // n in case 1, p in case 2
  Nat phi;        // phi(component); exponent modulus
  Nat order;      // phi(phi) = |U^2|
  std::vector<Nat> phi_primes;
  std::vector<Nat> order_primes;

  friend bool operator==(const u2_setting&, const u2_setting&) = default;
};

inline u2_setting make_u2_setting(const Nat& n, u2_case kind) {
  u2_setting s;
  s.kind = kind;
  s.n = n;
  if (kind == u2_case::case1) {
    if (n < 3) throw error(errc::invalid_argument, "modulus must be at least 3");
    if (!is_cyclic_unit_group(n)) throw tower_error(tower_level::n, "U(Z_" + to_string(n) + ") is not cyclic");
    s.component = n;
  } else {
    if (n % 3 != 0 || !is_prime(n / 3) || n / 3 <= 3)
      throw error(errc::invalid_case2_modulus, to_string(n) + " is not 3p with p an odd prime > 3");
    s.component = n / 3;
  }
  s.phi = euler_phi(s.component);
  if (!is_cyclic_unit_group(s.phi))
    throw tower_error(tower_level::phi1, "U(Z_" + to_string(s.phi) + ") is not cyclic");
  s.order = euler_phi(s.phi);
  if (s.order < 2) throw error(errc::degenerate_group, "U^2 has order " + to_string(s.order));
  s.phi_primes = prime_divisors(s.phi);
  s.order_primes = prime_divisors(s.order);
  return s;
}

struct u2_public_key {
  u2_setting setting;
  Nat theta1;  // generator of U(Z_component)
  Nat s;       // generator of U(Z_phi); theta1^s generates U^2
  Nat f;       // s^a mod phi
  Nat theta;   // theta1^s lifted to Z_n

  friend bool operator==(const u2_public_key&, const u2_public_key&) = default;
};

struct u2_key_pair {
  u2_public_key pub;
  Nat a;

  friend bool operator==(const u2_key_pair&, const u2_key_pair&) = default;
};

struct u2_ciphertext {
  Nat q;
  Nat delta;

  friend bool operator==(const u2_ciphertext&, const u2_ciphertext&) = default;
};

namespace detail {

/// Lifts a residue mod the component to Z_n (identity in case 1).
inline Nat u2_lift(const u2_setting& s, const Nat& x) {
  if (s.kind == u2_case::case1) return x;
  return crt_solve({{2, 3}, {x, s.component}});
}

/// Exponents a and k are drawn from [2, order - 1], widened to {2} when the
/// group has order 2 and that interval is empty.
inline std::pair<Nat, Nat> u2_exponent_range(const u2_setting& s) {
  return {Nat(2), std::max(Nat(2), Nat(s.order - 1))};
}

inline bool u2_is_generator_exponent(const u2_setting& s, const Nat& e) {
  return e >= 0 && e < s.phi && gcd(e, s.phi) == 1 && has_order(e, s.order, s.phi, s.order_primes);
}

}  // namespace detail

inline bool u2_contains(const u2_setting& s, const Nat& m) {
  if (m < 1 || m >= s.n) return false;
  if (s.kind == u2_case::case2 && m % 3 != 2) return false;
  const Nat r = m % s.component;
  return gcd(r, s.component) == 1 && has_order(r, s.phi, s.component, s.phi_primes);
}

/// U^2 in ascending order.
inline std::vector<Nat> u2_enumerate(const u2_setting& s) {
  std::vector<Nat> out = enumerate_u_k(s.component, 2);
  if (s.kind == u2_case::case2) {
    for (Nat& x : out) x = detail::u2_lift(s, x);
    std::sort(out.begin(), out.end());
  }
  return out;
}

/// Picks theta1 (smallest generator of U(Z_component)) and rejection-samples
/// s until it generates U(Z_phi).
template <class Engine>
std::pair<Nat, Nat> u2_find_generator_exponent(const u2_setting& s, Engine& rng) {
  const Nat theta1 = find_primitive_root(s.component);
  for (;;) {
    Nat candidate = uniform_nat(rng, 0, s.phi - 1);
    if (detail::u2_is_generator_exponent(s, candidate)) return {theta1, std::move(candidate)};
  }
}

template <class Engine>
std::pair<Nat, Nat> u2_find_generator_exponent(const Nat& n, Engine& rng) {
  return u2_find_generator_exponent(make_u2_setting(n, u2_case::case1), rng);
}

inline u2_key_pair u2_keygen_with(const u2_setting& setting, const Nat& s, const Nat& a) {
  if (!detail::u2_is_generator_exponent(setting, s))
    throw error(errc::invalid_argument, to_string(s) + " does not generate U(Z_" + to_string(setting.phi) + ")");
  const auto [lo, hi] = detail::u2_exponent_range(setting);
  if (a < lo || a > hi)
    throw error(errc::out_of_range, "private exponent must lie in [" + to_string(lo) + ", " + to_string(hi) + "]");
  u2_key_pair kp;
  kp.pub.setting = setting;
  kp.pub.theta1 = find_primitive_root(setting.component);
  kp.pub.s = s;
  kp.pub.f = mod_pow(s, a, setting.phi);
  kp.pub.theta = detail::u2_lift(setting, mod_pow(kp.pub.theta1, s, setting.component));
  kp.a = a;
  return kp;
}

template <class Engine>
u2_key_pair u2_keygen(const Nat& n, u2_case kind, Engine& rng) {
  const u2_setting setting = make_u2_setting(n, kind);
  auto [theta1, s] = u2_find_generator_exponent(setting, rng);
  const auto [lo, hi] = detail::u2_exponent_range(setting);
  return u2_keygen_with(setting, s, uniform_nat(rng, lo, hi));
}

/// q = s^k mod phi, delta = m^(f^k mod phi) mod n.
inline u2_ciphertext u2_encrypt_with_nonce(const u2_public_key& pub, const Nat& m, const Nat& k) {
  const u2_setting& st = pub.setting;
  if (!u2_contains(st, m)) throw error(errc::message_not_in_u2, to_string(m) + " is not in U^2");
  const auto [lo, hi] = detail::u2_exponent_range(st);
  if (k < lo || k > hi) throw error(errc::out_of_range, "nonce out of range");
  const Nat q = mod_pow(pub.s, k, st.phi);
  const Nat r = mod_pow(pub.f, k, st.phi);
  return {q, mod_pow(m, r, st.n)};
}

template <class Engine>
u2_ciphertext u2_encrypt(const u2_public_key& pub, const Nat& m, Engine& rng) {
  if (!u2_contains(pub.setting, m)) throw error(errc::message_not_in_u2, to_string(m) + " is not in U^2");
  const auto [lo, hi] = detail::u2_exponent_range(pub.setting);
  return u2_encrypt_with_nonce(pub, m, uniform_nat(rng, lo, hi));
}

/// t = q^(order - a) mod phi, m = delta^t mod n.
inline Nat u2_decrypt(const u2_key_pair& key, const u2_ciphertext& c) {
  const u2_setting& st = key.pub.setting;
  if (c.q < 0 || c.q >= st.phi || gcd(c.q, st.phi) != 1)
    throw error(errc::component_out_of_range, "q must be a unit modulo " + to_string(st.phi));
  if (c.delta < 0 || c.delta >= st.n) throw error(errc::component_out_of_range, "delta must lie in [0, n)");
  const Nat b = st.order - key.a % st.order;
  const Nat t = mod_pow(c.q, b, st.phi);
  return mod_pow(c.delta, t, st.n);
}

/// Maps an index in [0, |U^2|) to the element at that position of the
/// sorted enumeration.
inline Nat u2_encode_message(const u2_setting& s, const Nat& index) {
  const auto all = u2_enumerate(s);
  if (index < 0 || index >= all.size())
    throw error(errc::message_out_of_range, "index must lie in [0, " + std::to_string(all.size()) + ")");
  return all[index.convert_to<std::size_t>()];
}

inline Nat u2_decode_message(const u2_setting& s, const Nat& m) {
  const auto all = u2_enumerate(s);
  auto it = std::lower_bound(all.begin(), all.end(), m);
  if (it == all.end() || *it != m) throw error(errc::message_not_in_u2, to_string(m) + " is not in U^2");
  return Nat(it - all.begin());
}

}  // namespace eg3

#endif  // EG3_ELGAMAL_U2_HPP
