#include "eg3/elgamal_u3.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace eg3 {
namespace {

errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return errc::invalid_argument;
}

std::shared_ptr<const unit_group_tower> tower_of(std::uint64_t n) {
  return std::make_shared<const unit_group_tower>(Nat(n));
}

std::uint64_t oracle_f(std::uint64_t n, std::uint64_t x) { return *oracle::iso_f(n, x); }

TEST(U3Keygen, EightyOneWithBFour) {
  const auto kp = u3_keygen_from_private(tower_of(81), 4);
  EXPECT_EQ(kp.pub.g.value(), 50);
  EXPECT_EQ(kp.pub.B.value(), 5);
  EXPECT_FALSE(kp.weak());
  EXPECT_EQ(u3_keygen_from_private(tower_of(81), 1).pub.B, kp.pub.g);
}

TEST(U3Keygen, WeakKeyIsIdentity) {
  const auto t = tower_of(81);
  const auto kp = u3_keygen_from_private(t, 6);
  EXPECT_TRUE(kp.weak());
  EXPECT_EQ(kp.pub.B.value(), t->identity());
}

TEST(U3Keygen, Errors) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(code_of([&] { u3_keygen(tower_of(5), rng); }), errc::degenerate_group);
  EXPECT_EQ(code_of([&] { u3_keygen_from_private(tower_of(81), 0); }), errc::out_of_range);
  EXPECT_EQ(code_of([&] { u3_keygen_from_private(tower_of(81), 7); }), errc::out_of_range);
}

TEST(U3Keygen, PrivateExponentRange) {
  std::mt19937_64 rng(2);
  const auto t = tower_of(81);
  std::set<Nat> seen;
  for (int i = 0; i < 300; ++i) {
    const auto kp = u3_keygen(t, rng);
    seen.insert(kp.b);
    EXPECT_EQ(kp.pub.B, op_pow(*t, kp.pub.g, kp.b));
  }
  EXPECT_EQ(seen, (std::set<Nat>{1, 2, 3, 4, 5, 6}));
}

TEST(U3Encrypt, EightyOneTranscript) {
  const auto t = tower_of(81);
  const auto kp = u3_keygen_from_private(t, 4);
  const auto m = t->element(77);
  const auto s = op_pow(*t, kp.pub.B, 2);
  EXPECT_EQ(s.value(), 59);
  const auto c = u3_encrypt_with_nonce(kp.pub, m, 2);
  EXPECT_EQ(c.A.value(), 59);
  EXPECT_EQ(c.X.value(), 50);
  EXPECT_EQ(op_inverse(*t, op_pow(*t, c.A, kp.b)).value(), 5);
  EXPECT_EQ(u3_decrypt(kp, c), m);
}

TEST(U3Encrypt, IdentityMessageGivesSharedSecret) {
  const auto t = tower_of(81);
  const auto kp = u3_keygen_from_private(t, 4);
  for (int a = 1; a <= 6; ++a) {
    const auto c = u3_encrypt_with_nonce(kp.pub, t->element(t->identity()), a);
    EXPECT_EQ(c.X, op_pow(*t, kp.pub.B, a));
    EXPECT_EQ(u3_decrypt(kp, {c.A, c.X}).value(), t->identity());
  }
}

TEST(U3Encrypt, Errors) {
  std::mt19937_64 rng(3);
  const auto kp = u3_keygen_from_private(tower_of(81), 4);
  const auto other = tower_of(11);
  EXPECT_EQ(code_of([&] { u3_encrypt(kp.pub, other->element(7), rng); }), errc::message_not_in_u3);
  EXPECT_EQ(code_of([&] { u3_encrypt_with_nonce(kp.pub, kp.pub.g, 0); }), errc::out_of_range);
  const u3_ciphertext foreign{other->element(7), other->element(8)};
  EXPECT_EQ(code_of([&] { u3_decrypt(kp, foreign); }), errc::component_not_in_u3);
}

TEST(U3Encrypt, AgreesWithBruteForceLogs) {
  std::mt19937_64 rng(4);
  for (std::uint64_t n : {11, 23, 81, 162, 243, 347, 486}) {
    if (!oracle::tower_valid(n)) continue;
    const auto t = tower_of(n);
    const std::uint64_t order = oracle::iterated_phi(n, 3);
    if (order < 2) continue;
    for (int i = 0; i < 20; ++i) {
      const auto kp = u3_keygen(t, rng);
      const Nat a = uniform_nat(rng, 1, order);
      const auto m = u3_encode_message(*t, uniform_nat(rng, 0, order - 1));
      const auto c = u3_encrypt_with_nonce(kp.pub, m, a);
      const auto fb = oracle_f(n, kp.pub.B.value().convert_to<std::uint64_t>());
      const auto fm = oracle_f(n, m.value().convert_to<std::uint64_t>());
      const auto fg = oracle_f(n, kp.pub.g.value().convert_to<std::uint64_t>());
      const auto a64 = a.convert_to<std::uint64_t>();
      EXPECT_EQ(oracle_f(n, c.A.value().convert_to<std::uint64_t>()), a64 * fg % order);
      EXPECT_EQ(oracle_f(n, c.X.value().convert_to<std::uint64_t>()), (fm + a64 * fb) % order);
    }
  }
}

TEST(U3RoundTrip, ExhaustiveOnEightyOne) {
  const auto t = tower_of(81);
  for (int b = 1; b <= 6; ++b) {
    const auto kp = u3_keygen_from_private(t, b);
    for (int a = 1; a <= 6; ++a)
      for (int i = 0; i < 6; ++i) {
        const auto m = u3_encode_message(*t, i);
        const auto c = u3_encrypt_with_nonce(kp.pub, m, a);
        EXPECT_TRUE(t->contains_u3(c.A.value()));
        EXPECT_TRUE(t->contains_u3(c.X.value()));
        EXPECT_EQ(u3_decrypt(kp, c), m);
      }
  }
}

TEST(U3RoundTrip, RandomTowers) {
  std::mt19937_64 rng(500);
  std::vector<std::shared_ptr<const unit_group_tower>> towers;
  for (std::uint64_t n = 5; n <= 2000; ++n)
    if (oracle::tower_valid(n) && oracle::iterated_phi(n, 3) >= 2) towers.push_back(tower_of(n));
  ASSERT_FALSE(towers.empty());
  for (int i = 0; i < 500; ++i) {
    const auto& t = towers[rng() % towers.size()];
    const auto kp = u3_keygen(t, rng);
    const auto m = u3_encode_message(*t, uniform_nat(rng, 0, t->phi3() - 1));
    const auto c = u3_encrypt(kp.pub, m, rng);
    ASSERT_EQ(u3_decrypt(kp, c), m) << t->n();
  }
}

TEST(U3RoundTrip, HomomorphicUnderSharedNonce) {
  const auto t = tower_of(81);
  for (int b = 1; b <= 6; ++b) {
    const auto kp = u3_keygen_from_private(t, b);
    for (int a = 1; a <= 6; ++a)
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          const auto m1 = t->element_at(i), m2 = t->element_at(j);
          const auto c1 = u3_encrypt_with_nonce(kp.pub, m1, a);
          const auto c2 = u3_encrypt_with_nonce(kp.pub, m2, a);
          // X1 (x) X2 carries the shared secret twice; A^2 strips both copies.
          const u3_ciphertext combined{op_pow(*t, c1.A, 2), op_otimes(*t, c1.X, c2.X)};
          EXPECT_EQ(u3_decrypt(kp, combined), op_otimes(*t, m1, m2));
        }
  }
}

TEST(U3Messages, Encoding) {
  const auto t = tower_of(81);
  EXPECT_EQ(u3_encode_message(*t, 5).value(), 77);
  EXPECT_EQ(u3_encode_message(*t, 0).value(), 32);
  EXPECT_EQ(code_of([&] { u3_encode_message(*t, 6); }), errc::out_of_range);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(u3_decode_message(*t, u3_encode_message(*t, i)), i);
}

TEST(U3Messages, ByteStrings) {
  std::mt19937_64 rng(6);
  for (std::uint64_t n : {11, 81, 1459}) {
    const auto t = tower_of(n);
    const auto kp = u3_keygen(t, rng);
    for (std::size_t len : {0, 1, 2, 7, 32}) {
      std::vector<std::uint8_t> bytes(len);
      for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
      if (len > 1) bytes[0] = 0;
      const auto blocks = u3_encrypt_bytes(kp.pub, bytes, rng);
      EXPECT_EQ(u3_decrypt_bytes(kp, blocks), bytes) << n << " " << len;
    }
  }
}

TEST(U3Messages, BlocksUseIndependentNonces) {
  std::mt19937_64 rng(7);
  const auto t = tower_of(1459);
  const auto kp = u3_keygen(t, rng);
  const std::vector<std::uint8_t> bytes(64, 0);
  const auto blocks = u3_encrypt_bytes(kp.pub, bytes, rng);
  std::set<Nat> nonces;
  for (const auto& c : blocks) nonces.insert(c.A.value());
  EXPECT_GT(nonces.size(), 1u);
}

}  // namespace
}  // namespace eg3
