#ifndef EG3_ELGAMAL_CLASSIC_HPP
#define EG3_ELGAMAL_CLASSIC_HPP

// Textbook ElGamal over Z_p^*. Serves as the reference scheme.

#include "eg3/error.hpp"
#include "eg3/nat.hpp"
#include "eg3/number_theory.hpp"

namespace eg3 {

struct classic_public_key {
  Nat p;
  Nat alpha;    // generator of Z_p^*
  Nat alpha_a;  // alpha^a mod p

  friend bool operator==(const classic_public_key&, const classic_public_key&) = default;
};

struct classic_key_pair {
  classic_public_key pub;
  Nat a;  // private, 1 <= a <= p - 2

  friend bool operator==(const classic_key_pair&, const classic_key_pair&) = default;
};

struct classic_ciphertext {
  Nat gamma;
  Nat delta;

  friend bool operator==(const classic_ciphertext&, const classic_ciphertext&) = default;
};

inline classic_key_pair classic_keygen_from_private(const Nat& p, const Nat& a) {
  if (!is_prime(p)) throw error(errc::not_prime, to_string(p) + " is not prime");
  if (p < 5) throw error(errc::invalid_argument, "p must be at least 5");
  if (a < 1 || a > p - 2) throw error(errc::out_of_range, "private exponent must lie in [1, p-2]");
  const Nat alpha = find_primitive_root(p);
  return {{p, alpha, mod_pow(alpha, a, p)}, a};
}

template <class Engine>
classic_key_pair classic_keygen(const Nat& p, Engine& rng) {
  if (!is_prime(p)) throw error(errc::not_prime, to_string(p) + " is not prime");
  if (p < 5) throw error(errc::invalid_argument, "p must be at least 5");
  return classic_keygen_from_private(p, uniform_nat(rng, 1, p - 2));
}

/// gamma = alpha^k, delta = m * (alpha^a)^k. m = 0 is accepted but yields
/// delta = 0, which reveals the message.
inline classic_ciphertext classic_encrypt_with_nonce(const classic_public_key& pub, const Nat& m, const Nat& k) {
  if (m < 0 || m >= pub.p) throw error(errc::message_out_of_range, "message must lie in [0, p-1]");
  if (k < 1 || k > pub.p - 2) throw error(errc::out_of_range, "nonce must lie in [1, p-2]");
  return {mod_pow(pub.alpha, k, pub.p), m * mod_pow(pub.alpha_a, k, pub.p) % pub.p};
}

template <class Engine>
classic_ciphertext classic_encrypt(const classic_public_key& pub, const Nat& m, Engine& rng) {
  if (m < 0 || m >= pub.p) throw error(errc::message_out_of_range, "message must lie in [0, p-1]");
  return classic_encrypt_with_nonce(pub, m, uniform_nat(rng, 1, pub.p - 2));
}

/// m = gamma^(p-1-a) * delta mod p.
inline Nat classic_decrypt(const classic_key_pair& key, const classic_ciphertext& c) {
  const Nat& p = key.pub.p;
  if (c.gamma < 1 || c.gamma >= p || c.delta < 0 || c.delta >= p)
    throw error(errc::component_out_of_range, "ciphertext components must lie in [1, p)");
  return mod_pow(c.gamma, p - 1 - key.a, p) * c.delta % p;
}

}  // namespace eg3

#endif  // EG3_ELGAMAL_CLASSIC_HPP
