#ifndef EG3_ELGAMAL_U3_HPP
#define EG3_ELGAMAL_U3_HPP

// ElGamal over the third group of units U^3(Z_n).
//
//   keygen:  B = g^b                        b in [1, phi^3(n)]
//   encrypt: s = B^a, A = g^a, X = m (x) s   a in [1, phi^3(n)]
//   decrypt: s = A^b, m = X (x) s^-1
//
// Powers and products are the transported operations from unit_groups. All
// of them are evaluated on the residue side: one f per input, additions and
// multiplications mod phi^3(n), one f^-1 per output.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "eg3/error.hpp"
#include "eg3/nat.hpp"
#include "eg3/unit_groups.hpp"

namespace eg3 {

struct u3_public_key {
  std::shared_ptr<const unit_group_tower> tower;
  group_element g;
  group_element B;

  const Nat& n() const { return tower->n(); }
};

struct u3_key_pair {
  u3_public_key pub;
  Nat b;

  /// b = phi^3(n) makes B the identity, so ciphertexts carry m in the clear.
  bool weak() const { return b % pub.tower->phi3() == 0; }
};

struct u3_ciphertext {
  group_element A;
  group_element X;

  friend bool operator==(const u3_ciphertext&, const u3_ciphertext&) = default;
};

namespace detail {

inline void require_nondegenerate(const unit_group_tower& t) {
  if (t.phi3() < 2)
    throw error(errc::degenerate_group, "U^3(Z_" + to_string(t.n()) + ") has order " + to_string(t.phi3()));
}

inline void require_exponent(const unit_group_tower& t, const Nat& e, const char* what) {
  if (e < 1 || e > t.phi3())
    throw error(errc::out_of_range, std::string(what) + " must lie in [1, " + to_string(t.phi3()) + "]");
}

/// f(x), rethrowing membership failures under `code`.
inline Nat residue_or(const unit_group_tower& t, const group_element& x, errc code) {
  try {
    return t.residue_of(x);
  } catch (const error& e) {
    if (e.code() == errc::not_in_u3) throw error(code, e.what());
    throw;
  }
}

}  // namespace detail

inline u3_key_pair u3_keygen_from_private(std::shared_ptr<const unit_group_tower> tower, const Nat& b) {
  detail::require_nondegenerate(*tower);
  detail::require_exponent(*tower, b, "private exponent");
  auto g = tower->element(tower->g());
  auto B = op_pow(*tower, g, b);
  return {{std::move(tower), std::move(g), std::move(B)}, b};
}

template <class Engine>
u3_key_pair u3_keygen(std::shared_ptr<const unit_group_tower> tower, Engine& rng) {
  detail::require_nondegenerate(*tower);
  const Nat b = uniform_nat(rng, 1, tower->phi3());
  return u3_keygen_from_private(std::move(tower), b);
}

inline u3_ciphertext u3_encrypt_with_nonce(const u3_public_key& pub, const group_element& m, const Nat& a) {
  const unit_group_tower& t = *pub.tower;
  detail::require_nondegenerate(t);
  detail::require_exponent(t, a, "nonce");
  const Nat& order = t.phi3();
  const Nat fm = detail::residue_or(t, m, errc::message_not_in_u3);
  const Nat shared = a * t.residue_of(pub.B) % order;  // f(B^a)
  return {t.element_at(a * t.residue_of(pub.g) % order), t.element_at((fm + shared) % order)};
}

template <class Engine>
u3_ciphertext u3_encrypt(const u3_public_key& pub, const group_element& m, Engine& rng) {
  detail::require_nondegenerate(*pub.tower);
  detail::residue_or(*pub.tower, m, errc::message_not_in_u3);
  return u3_encrypt_with_nonce(pub, m, uniform_nat(rng, 1, pub.tower->phi3()));
}

inline group_element u3_decrypt(const u3_key_pair& key, const u3_ciphertext& c) {
  const unit_group_tower& t = *key.pub.tower;
  const Nat& order = t.phi3();
  const Nat fa = detail::residue_or(t, c.A, errc::component_not_in_u3);
  const Nat fx = detail::residue_or(t, c.X, errc::component_not_in_u3);
  const Nat shared = key.b * fa % order;  // f(A^b)
  return t.element_at((fx + order - shared) % order);
}

/// Message t in [0, phi^3(n)) becomes f^-1(t).
inline group_element u3_encode_message(const unit_group_tower& t, const Nat& index) {
  if (index < 0 || index >= t.phi3())
    throw error(errc::out_of_range, "message index must lie in [0, " + to_string(t.phi3()) + ")");
  return t.element_at(index);
}

inline Nat u3_decode_message(const unit_group_tower& t, const group_element& m) { return t.residue_of(m); }

/// Splits bytes into base-phi^3(n) digits, least significant first. A 0x01
/// sentinel is prepended so leading zero bytes survive the round trip.
inline std::vector<Nat> u3_bytes_to_digits(const unit_group_tower& t, std::span<const std::uint8_t> bytes) {
  detail::require_nondegenerate(t);
  Nat value = 1;
  for (std::uint8_t byte : bytes) value = (value << 8) | byte;
  std::vector<Nat> digits;
  while (value != 0) {
    digits.push_back(value % t.phi3());
    value /= t.phi3();
  }
  return digits;
}

inline std::vector<std::uint8_t> u3_digits_to_bytes(const unit_group_tower& t, std::span<const Nat> digits) {
  detail::require_nondegenerate(t);
  Nat value = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it < 0 || *it >= t.phi3()) throw error(errc::out_of_range, "digit out of range");
    value = value * t.phi3() + *it;
  }
  std::vector<std::uint8_t> bytes;
  while (value > 1) {
    bytes.push_back(static_cast<std::uint8_t>((value & 0xff).convert_to<unsigned>()));
    value >>= 8;
  }
  if (value != 1) throw error(errc::out_of_range, "missing length sentinel");
  return {bytes.rbegin(), bytes.rend()};
}

/// Encrypts each digit block under its own fresh nonce.
template <class Engine>
std::vector<u3_ciphertext> u3_encrypt_bytes(const u3_public_key& pub, std::span<const std::uint8_t> bytes,
                                            Engine& rng) {
  std::vector<u3_ciphertext> out;
  for (const Nat& digit : u3_bytes_to_digits(*pub.tower, bytes))
    out.push_back(u3_encrypt(pub, u3_encode_message(*pub.tower, digit), rng));
  return out;
}

inline std::vector<std::uint8_t> u3_decrypt_bytes(const u3_key_pair& key, std::span<const u3_ciphertext> blocks) {
  std::vector<Nat> digits;
  digits.reserve(blocks.size());
  for (const auto& c : blocks) digits.push_back(u3_decode_message(*key.pub.tower, u3_decrypt(key, c)));
  return u3_digits_to_bytes(*key.pub.tower, digits);
}

}  // namespace eg3

#endif  // EG3_ELGAMAL_U3_HPP
