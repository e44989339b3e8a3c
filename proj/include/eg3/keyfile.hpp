#ifndef EG3_KEYFILE_HPP
#define EG3_KEYFILE_HPP

// Line-oriented key files:
//
//   scheme = u3
//   visibility = private
//   n = 81
//   g = 50
//   B = 5
//   b = 4
//
// Field order is fixed per scheme; the private exponent comes last and only
// in private files. Canonical text round-trips byte for byte.

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eg3/elgamal_classic.hpp"
#include "eg3/elgamal_u2.hpp"
#include "eg3/elgamal_u3.hpp"
#include "eg3/error.hpp"
#include "eg3/nat.hpp"

namespace eg3 {

enum class key_scheme { classic, u2_case1, u2_case2, u3 };
enum class key_visibility { public_key, private_key };

inline std::string_view to_string(key_scheme s) {
  switch (s) {
    case key_scheme::classic: return "classic";
    case key_scheme::u2_case1: return "u2-case1";
    case key_scheme::u2_case2: return "u2-case2";
    case key_scheme::u3: return "u3";
  }
  return "?";
}

inline std::string_view to_string(key_visibility v) {
  return v == key_visibility::public_key ? "public" : "private";
}

inline std::optional<key_scheme> parse_key_scheme(std::string_view s) {
  for (auto k : {key_scheme::classic, key_scheme::u2_case1, key_scheme::u2_case2, key_scheme::u3})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct key_file {
  key_scheme scheme = key_scheme::classic;
  key_visibility visibility = key_visibility::public_key;
  std::vector<std::pair<std::string, Nat>> fields;

  const Nat& at(std::string_view name) const {
    for (const auto& [k, v] : fields)
      if (k == name) return v;
    throw error(errc::malformed_file, "missing field " + std::string(name));
  }

  friend bool operator==(const key_file&, const key_file&) = default;
};

namespace detail {

/// Public field names in file order, followed by the private one.
inline std::pair<std::vector<std::string_view>, std::string_view> key_layout(key_scheme s) {
  switch (s) {
    case key_scheme::classic: return {{"p", "alpha", "alpha_a"}, "a"};
    case key_scheme::u2_case1: return {{"n", "theta1", "s", "f"}, "a"};
    case key_scheme::u2_case2: return {{"n", "p", "theta1", "theta", "s", "f"}, "a"};
    case key_scheme::u3: return {{"n", "g", "B"}, "b"};
  }
  return {};
}

inline std::pair<std::string_view, std::string_view> split_line(std::string_view line, std::size_t number) {
  const auto eq = line.find(" = ");
  if (eq == std::string_view::npos || eq == 0 || eq + 3 >= line.size())
    throw error(errc::malformed_file, "line " + std::to_string(number) + ": expected 'key = value'");
  return {line.substr(0, eq), line.substr(eq + 3)};
}

}  // namespace detail

inline std::string serialize_key_file(const key_file& file) {
  std::ostringstream out;
  out << "scheme = " << to_string(file.scheme) << '\n' << "visibility = " << to_string(file.visibility) << '\n';
  for (const auto& [k, v] : file.fields) out << k << " = " << v << '\n';
  return out.str();
}

inline key_file parse_key_file(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos) throw error(errc::malformed_file, "missing final newline");
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  if (lines.size() < 2) throw error(errc::malformed_file, "missing scheme or visibility line");

  key_file file;
  const auto [k0, v0] = detail::split_line(lines[0], 1);
  const auto scheme = parse_key_scheme(v0);
  if (k0 != "scheme" || !scheme) throw error(errc::malformed_file, "line 1: unknown scheme");
  file.scheme = *scheme;
  const auto [k1, v1] = detail::split_line(lines[1], 2);
  if (k1 != "visibility" || (v1 != "public" && v1 != "private"))
    throw error(errc::malformed_file, "line 2: visibility must be public or private");
  file.visibility = v1 == "public" ? key_visibility::public_key : key_visibility::private_key;

  auto [names, secret] = detail::key_layout(file.scheme);
  if (file.visibility == key_visibility::private_key) names.push_back(secret);
  if (lines.size() != names.size() + 2)
    throw error(errc::malformed_file, "expected " + std::to_string(names.size()) + " fields");
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto [k, v] = detail::split_line(lines[i + 2], i + 3);
    if (k != names[i])
      throw error(errc::malformed_file, "line " + std::to_string(i + 3) + ": expected field " + std::string(names[i]));
    try {
      const Nat value = parse_nat(v);
      // Reject leading zeros so serialization is canonical.
      if (v.size() > 1 && v.front() == '0') throw error(errc::invalid_argument, "leading zero");
      file.fields.emplace_back(std::string(k), value);
    } catch (const error&) {
      throw error(errc::malformed_file, "line " + std::to_string(i + 3) + ": not a decimal integer");
    }
  }
  return file;
}

// Conversions between key objects and files. Loading re-derives every public
// quantity and rejects files that disagree with it.

namespace detail {

template <class F>
auto as_malformed(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const error& e) {
    if (e.code() == errc::malformed_file) throw;
    throw error(errc::malformed_file, e.what());
  }
}

inline void require_scheme(const key_file& f, std::initializer_list<key_scheme> allowed) {
  for (auto s : allowed)
    if (f.scheme == s) return;
  throw error(errc::malformed_file, "unexpected scheme " + std::string(to_string(f.scheme)));
}

inline void require_private(const key_file& f) {
  if (f.visibility != key_visibility::private_key) throw error(errc::malformed_file, "private key required");
}

inline void require_match(const Nat& stored, const Nat& derived, const char* name) {
  if (stored != derived) throw error(errc::malformed_file, std::string("inconsistent field ") + name);
}

}  // namespace detail

inline key_file to_key_file(const classic_key_pair& kp, key_visibility v) {
  key_file f{key_scheme::classic, v, {{"p", kp.pub.p}, {"alpha", kp.pub.alpha}, {"alpha_a", kp.pub.alpha_a}}};
  if (v == key_visibility::private_key) f.fields.emplace_back("a", kp.a);
  return f;
}

inline key_file to_key_file(const u2_key_pair& kp, key_visibility v) {
  const auto& pub = kp.pub;
  key_file f;
  f.visibility = v;
  if (pub.setting.kind == u2_case::case1) {
    f.scheme = key_scheme::u2_case1;
    f.fields = {{"n", pub.setting.n}, {"theta1", pub.theta1}, {"s", pub.s}, {"f", pub.f}};
  } else {
    f.scheme = key_scheme::u2_case2;
    f.fields = {{"n", pub.setting.n}, {"p", pub.setting.component}, {"theta1", pub.theta1},
                {"theta", pub.theta},  {"s", pub.s},                 {"f", pub.f}};
  }
  if (v == key_visibility::private_key) f.fields.emplace_back("a", kp.a);
  return f;
}

inline key_file to_key_file(const u3_key_pair& kp, key_visibility v) {
  key_file f{key_scheme::u3, v, {{"n", kp.pub.n()}, {"g", kp.pub.g.value()}, {"B", kp.pub.B.value()}}};
  if (v == key_visibility::private_key) f.fields.emplace_back("b", kp.b);
  return f;
}

inline classic_public_key classic_public_from_file(const key_file& f) {
  detail::require_scheme(f, {key_scheme::classic});
  return detail::as_malformed([&] {
    const Nat& p = f.at("p");
    if (!is_prime(p) || p < 5) throw error(errc::malformed_file, "p must be a prime >= 5");
    detail::require_match(f.at("alpha"), find_primitive_root(p), "alpha");
    const Nat& alpha_a = f.at("alpha_a");
    if (alpha_a < 1 || alpha_a >= p) throw error(errc::malformed_file, "alpha_a out of range");
    return classic_public_key{p, f.at("alpha"), alpha_a};
  });
}

inline classic_key_pair classic_private_from_file(const key_file& f) {
  detail::require_private(f);
  const auto pub = classic_public_from_file(f);
  return detail::as_malformed([&] {
    auto kp = classic_keygen_from_private(pub.p, f.at("a"));
    detail::require_match(pub.alpha_a, kp.pub.alpha_a, "alpha_a");
    return kp;
  });
}

namespace detail {

inline u2_public_key u2_public_unchecked(const key_file& f) {
  const u2_case kind = f.scheme == key_scheme::u2_case1 ? u2_case::case1 : u2_case::case2;
  u2_public_key pub;
  pub.setting = make_u2_setting(f.at("n"), kind);
  if (kind == u2_case::case2) require_match(f.at("p"), pub.setting.component, "p");
  pub.theta1 = f.at("theta1");
  pub.s = f.at("s");
  pub.f = f.at("f");
  require_match(pub.theta1, find_primitive_root(pub.setting.component), "theta1");
  if (!u2_is_generator_exponent(pub.setting, pub.s)) throw error(errc::malformed_file, "s is not a generator");
  if (pub.f < 1 || pub.f >= pub.setting.phi || gcd(pub.f, pub.setting.phi) != 1)
    throw error(errc::malformed_file, "f out of range");
  pub.theta = u2_lift(pub.setting, mod_pow(pub.theta1, pub.s, pub.setting.component));
  if (kind == u2_case::case2) require_match(f.at("theta"), pub.theta, "theta");
  return pub;
}

}  // namespace detail

inline u2_public_key u2_public_from_file(const key_file& f) {
  detail::require_scheme(f, {key_scheme::u2_case1, key_scheme::u2_case2});
  return detail::as_malformed([&] { return detail::u2_public_unchecked(f); });
}

inline u2_key_pair u2_private_from_file(const key_file& f) {
  detail::require_private(f);
  const auto pub = u2_public_from_file(f);
  return detail::as_malformed([&] {
    auto kp = u2_keygen_with(pub.setting, pub.s, f.at("a"));
    detail::require_match(pub.f, kp.pub.f, "f");
    return kp;
  });
}

inline u3_public_key u3_public_from_file(const key_file& f, tower_options options = {}) {
  detail::require_scheme(f, {key_scheme::u3});
  return detail::as_malformed([&] {
    auto tower = std::make_shared<const unit_group_tower>(f.at("n"), options);
    detail::require_match(f.at("g"), tower->g(), "g");
    detail::require_nondegenerate(*tower);
    auto g = tower->element(f.at("g"));
    auto B = tower->element(f.at("B"));
    return u3_public_key{std::move(tower), std::move(g), std::move(B)};
  });
}

inline u3_key_pair u3_private_from_file(const key_file& f, tower_options options = {}) {
  detail::require_private(f);
  auto pub = u3_public_from_file(f, options);
  return detail::as_malformed([&] {
    auto kp = u3_keygen_from_private(pub.tower, f.at("b"));
    detail::require_match(pub.B.value(), kp.pub.B.value(), "B");
    return kp;
  });
}

}  // namespace eg3

#endif  // EG3_KEYFILE_HPP
