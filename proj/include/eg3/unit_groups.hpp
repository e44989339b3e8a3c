#ifndef EG3_UNIT_GROUPS_HPP
#define EG3_UNIT_GROUPS_HPP

// The totient tower n -> phi(n) -> phi^2(n) -> phi^3(n), the isomorphism
// f : U^3(Z_n) -> Z_{phi^3(n)} given by f(a) = log_g3 log_g2 log_g1 a, and
// the group law on U^3(Z_n) transported from addition through f.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "eg3/error.hpp"
#include "eg3/nat.hpp"
#include "eg3/number_theory.hpp"

namespace eg3 {

struct tower_options {
  /// Levels whose modulus is at most this get a full discrete-log table at
  /// construction; larger levels solve logs on demand.
  std::uint64_t log_table_limit = std::uint64_t{1} << 20;
};

/// Largest phi(n) that enumerate_u_k will materialize.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 20;

namespace detail {

/// The cyclic group U(Z_m) with a fixed generator. Modulus 1 is allowed and
/// stands for the trivial group {0}.
class cyclic_level {
 public:
  cyclic_level() = default;

  cyclic_level(Nat modulus, Nat generator, std::uint64_t table_limit)
      : modulus_(std::move(modulus)), generator_(std::move(generator)), order_(euler_phi(modulus_)) {
    if (modulus_ > 1 && modulus_ <= table_limit) build_table();
  }

  const Nat& modulus() const noexcept { return modulus_; }
  const Nat& generator() const noexcept { return generator_; }
  const Nat& order() const noexcept { return order_; }

  /// log_generator(x) in [0, order), or nullopt when x is not in U(Z_m).
  std::optional<Nat> log(const Nat& x) const {
    if (x < 0 || x >= modulus_) return std::nullopt;
    if (modulus_ == 1) return Nat(0);
    if (!table_.empty()) {
      const std::uint32_t e = table_[x.convert_to<std::size_t>()];
      if (e == kNoLog) return std::nullopt;
      return Nat(e);
    }
    if (eg3::gcd(x, modulus_) != 1) return std::nullopt;
    try {
      return discrete_log(generator_, x, modulus_, order_);
    } catch (const error& e) {
      if (e.code() == errc::not_in_subgroup) return std::nullopt;
      throw;
    }
  }

  /// generator^e mod m.
  Nat exp(const Nat& e) const {
    if (modulus_ == 1) return 0;
    return mod_pow(generator_, e, modulus_);
  }

 private:
  static constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

  void build_table() {
    const std::uint64_t m = to_u64(modulus_), g = to_u64(generator_), ord = to_u64(order_);
    table_.assign(m, kNoLog);
    std::uint64_t current = 1;
    for (std::uint64_t e = 0; e < ord; ++e) {
      table_[current] = static_cast<std::uint32_t>(e);
      current = current * g % m;
    }
  }

  Nat modulus_ = 1;
  Nat generator_ = 1;
  Nat order_ = 1;
  std::vector<std::uint32_t> table_;
};

}  // namespace detail

class unit_group_tower;

/// An element of U^3(Z_n). Only a tower can mint one, after checking
/// membership, so holding one is proof the value lies in the group.
class group_element {
 public:
  const Nat& value() const noexcept { return value_; }
  /// The modulus of the owning tower.
  const Nat& modulus() const noexcept { return modulus_; }

  friend bool operator==(const group_element&, const group_element&) = default;

 private:
  friend class unit_group_tower;
  group_element(Nat value, Nat modulus) : value_(std::move(value)), modulus_(std::move(modulus)) {}

  Nat value_;
  Nat modulus_;
};

/// A modulus n whose unit groups U(Z_n), U(Z_phi(n)) and U(Z_phi^2(n)) are
/// all cyclic, with the smallest generator at each level. Immutable after
/// construction; every lookup table is filled in the constructor.
class unit_group_tower {
 public:
  explicit unit_group_tower(const Nat& n, tower_options options = {}) {
    if (n < 5) throw error(errc::invalid_argument, "tower requires n >= 5, got " + to_string(n));
    const std::array<Nat, 4> chain = {n, euler_phi(n), iterated_phi(n, 2), iterated_phi(n, 3)};
    constexpr std::array<tower_level, 3> tags = {tower_level::n, tower_level::phi1, tower_level::phi2};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!is_cyclic_unit_group(chain[i]))
        throw tower_error(tags[i], "U(Z_" + to_string(chain[i]) + ") is not cyclic");
      levels_[i] = detail::cyclic_level(chain[i], find_primitive_root(chain[i]), options.log_table_limit);
    }
    phi3_ = chain[3];
    // Closed form g1^(g2^g3 mod phi(n)) mod n.
    generator_ = mod_pow(g1(), mod_pow(g2(), g3(), phi1()), n);
    identity_ = value_at(0);
  }

  const Nat& n() const noexcept { return levels_[0].modulus(); }
  const Nat& phi1() const noexcept { return levels_[1].modulus(); }
  const Nat& phi2() const noexcept { return levels_[2].modulus(); }
  const Nat& phi3() const noexcept { return phi3_; }
  const Nat& g1() const noexcept { return levels_[0].generator(); }
  const Nat& g2() const noexcept { return levels_[1].generator(); }
  const Nat& g3() const noexcept { return levels_[2].generator(); }
  /// Generator of U^3(Z_n).
  const Nat& g() const noexcept { return generator_; }
  /// Identity of the U^3 group law, f^-1(0).
  const Nat& identity() const noexcept { return identity_; }

  const detail::cyclic_level& level(tower_level which) const noexcept {
    return levels_[static_cast<std::size_t>(which)];
  }

  /// f(a), or nullopt when a is not in U^3(Z_n).
  std::optional<Nat> residue_of(const Nat& a) const {
    auto l1 = levels_[0].log(a);
    if (!l1) return std::nullopt;
    auto l2 = levels_[1].log(*l1);
    if (!l2) return std::nullopt;
    return levels_[2].log(*l2);
  }

  /// f^-1(t) for t in [0, phi^3(n)).
  Nat value_at(const Nat& t) const {
    if (t < 0 || t >= phi3_)
      throw error(errc::out_of_range, to_string(t) + " not in [0, " + to_string(phi3_) + ")");
    return levels_[0].exp(levels_[1].exp(levels_[2].exp(t)));
  }

  bool contains_u2(const Nat& x) const {
    auto l1 = levels_[0].log(x);
    return l1 && eg3::gcd(*l1, phi1()) == 1;
  }

  bool contains_u3(const Nat& x) const { return residue_of(x).has_value(); }

  group_element element(const Nat& value) const {
    if (!contains_u3(value))
      throw error(errc::not_in_u3, to_string(value) + " is not in U^3(Z_" + to_string(n()) + ")");
    return group_element(value, n());
  }

  group_element element_at(const Nat& t) const { return group_element(value_at(t), n()); }

  /// f(x) for an element minted by this tower.
  Nat residue_of(const group_element& x) const {
    if (x.modulus() != n())
      throw error(errc::not_in_u3, "element belongs to modulus " + to_string(x.modulus()));
    auto t = residue_of(x.value());
    if (!t) throw error(errc::not_in_u3, to_string(x.value()) + " is not in U^3(Z_" + to_string(n()) + ")");
    return *t;
  }

 private:
  std::array<detail::cyclic_level, 3> levels_;
  Nat phi3_;
  Nat generator_;
  Nat identity_;
};

inline unit_group_tower build_tower(const Nat& n, tower_options options = {}) {
  return unit_group_tower(n, options);
}

/// Sorted elements of U^k(Z_n) for k in {1, 2, 3}:
///   k = 1: units of Z_n
///   k = 2: { g1^i : gcd(i, phi(n)) = 1 }
///   k = 3: { g1^(g2^i mod phi(n)) : gcd(i, phi^2(n)) = 1 }
/// Only the levels the construction touches need cyclic unit groups.
inline std::vector<Nat> enumerate_u_k(const Nat& n, int k) {
  if (k < 1 || k > 3) throw error(errc::invalid_argument, "k must be 1, 2 or 3");
  if (n < 2) throw error(errc::invalid_argument, "enumerate_u_k requires n >= 2");
  const Nat phi = euler_phi(n);
  if (phi > kEnumerationLimit)
    throw error(errc::enumeration_too_large, "phi(" + to_string(n) + ") = " + to_string(phi));
  if (!is_cyclic_unit_group(n)) throw tower_error(tower_level::n, "U(Z_" + to_string(n) + ") is not cyclic");
  if (k >= 2 && !is_cyclic_unit_group(phi))
    throw tower_error(tower_level::phi1, "U(Z_" + to_string(phi) + ") is not cyclic");

  std::vector<Nat> out;
  if (k == 1) {
    for (Nat a = 1; a < n; ++a)
      if (eg3::gcd(a, n) == 1) out.push_back(a);
    return out;
  }
  const Nat g1 = find_primitive_root(n);
  if (k == 2) {
    for (Nat i = 0; i < phi; ++i)
      if (eg3::gcd(i, phi) == 1) out.push_back(mod_pow(g1, i, n));
  } else {
    if (phi < 2) throw error(errc::invalid_argument, "U^3 requires phi(n) >= 2");
    const Nat phi2 = euler_phi(phi);
    const Nat g2 = find_primitive_root(phi);
    for (Nat i = 0; i < phi2; ++i)
      if (eg3::gcd(i, phi2) == 1) out.push_back(mod_pow(g1, mod_pow(g2, i, phi), n));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Nat> enumerate_u_k(const unit_group_tower& tower, int k) {
  return enumerate_u_k(tower.n(), k);
}

inline Nat iso_f(const unit_group_tower& tower, const Nat& a) {
  auto t = tower.residue_of(a);
  if (!t) throw error(errc::not_in_u3, to_string(a) + " is not in U^3(Z_" + to_string(tower.n()) + ")");
  return *t;
}

inline Nat iso_f_inv(const unit_group_tower& tower, const Nat& t) { return tower.value_at(t); }

inline const Nat& u3_generator(const unit_group_tower& tower) { return tower.g(); }

/// x (+) y = x^(log_g1 y) mod n, closed on U^2(Z_n).
inline Nat op_oplus(const unit_group_tower& tower, const Nat& x, const Nat& y) {
  if (!tower.contains_u2(x)) throw error(errc::not_in_u2, to_string(x) + " is not in U^2");
  if (!tower.contains_u2(y)) throw error(errc::not_in_u2, to_string(y) + " is not in U^2");
  return mod_pow(x, *tower.level(tower_level::n).log(y), tower.n());
}

inline group_element op_otimes(const unit_group_tower& tower, const group_element& x, const group_element& y) {
  return tower.element_at((tower.residue_of(x) + tower.residue_of(y)) % tower.phi3());
}

inline group_element op_pow(const unit_group_tower& tower, const group_element& x, const Nat& e) {
  require_non_negative(e, "exponent");
  return tower.element_at(e % tower.phi3() * tower.residue_of(x) % tower.phi3());
}

inline group_element op_inverse(const unit_group_tower& tower, const group_element& x) {
  return tower.element_at((tower.phi3() - tower.residue_of(x)) % tower.phi3());
}

}  // namespace eg3

#endif  // EG3_UNIT_GROUPS_HPP
