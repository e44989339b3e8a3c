#include "eg3/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "eg3/bench.hpp"
#include "eg3/elgamal_classic.hpp"
#include "eg3/elgamal_u2.hpp"
#include "eg3/elgamal_u3.hpp"
#include "eg3/keyfile.hpp"
#include "eg3/number_theory.hpp"
#include "eg3/unit_groups.hpp"

namespace eg3::cli {

int exit_code_for(errc code) {
  switch (code) {
    case errc::malformed_file: return exit_malformed_file;
    case errc::message_out_of_range:
    case errc::message_not_in_u2:
    case errc::message_not_in_u3: return exit_message_range;
    default: return exit_invalid;
  }
}

namespace {

std::mt19937_64 make_rng(const std::optional<std::uint64_t>& seed) {
  if (seed) return std::mt19937_64(*seed);
  std::random_device rd;
  return std::mt19937_64((std::uint64_t{rd()} << 32) | rd());
}

std::optional<Nat> parse_optional(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_nat(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::malformed_file, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw error(errc::invalid_argument, "cannot write " + path);
}

std::pair<Nat, Nat> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw error(errc::invalid_argument, "ciphertext must look like x,y");
  return {parse_nat(std::string_view(text).substr(0, comma)), parse_nat(std::string_view(text).substr(comma + 1))};
}

void print_pair(std::ostream& out, const Nat& x, const Nat& y) { out << x << ',' << y << '\n'; }

struct explore_args {
  std::string n;
  int k = 3;
  std::uint64_t limit = 1000;
};

void cmd_explore(const explore_args& a, std::ostream& out) {
  const unit_group_tower tower(parse_nat(a.n));
  out << "n = " << tower.n() << '\n'
      << "phi = " << tower.phi1() << '\n'
      << "phi2 = " << tower.phi2() << '\n'
      << "phi3 = " << tower.phi3() << '\n'
      << "g1 = " << tower.g1() << '\n'
      << "g2 = " << tower.g2() << '\n'
      << "g3 = " << tower.g3() << '\n'
      << "g = " << tower.g() << '\n';

  const Nat size = iterated_phi(tower.n(), static_cast<std::uint64_t>(a.k));
  out << "|U^" << a.k << "| = " << size << '\n';
  if (size <= a.limit) {
    out << "U^" << a.k << " = {";
    const auto elements = enumerate_u_k(tower, a.k);
    for (std::size_t i = 0; i < elements.size(); ++i) out << (i ? ", " : "") << elements[i];
    out << "}\n";
  }
  if (tower.phi3() <= a.limit) {
    out << "iso_f:\n";
    std::map<Nat, Nat> table;
    for (Nat t = 0; t < tower.phi3(); ++t) table.emplace(iso_f_inv(tower, t), t);
    for (const auto& [x, t] : table) out << x << " -> " << t << '\n';
  }
}

struct keygen_args {
  std::string scheme;
  std::string n;
  std::optional<std::uint64_t> seed;
  std::string force_private;
  std::string public_out;
  std::string private_out;
};

void cmd_keygen(const keygen_args& a, std::ostream& out, std::ostream& err) {
  const auto scheme = parse_key_scheme(a.scheme);
  if (!scheme) throw error(errc::invalid_argument, "unknown scheme " + a.scheme);
  const Nat n = parse_nat(a.n);
  const auto forced = parse_optional(a.force_private);
  auto rng = make_rng(a.seed);

  key_file priv;
  switch (*scheme) {
    case key_scheme::classic: {
      priv = to_key_file(forced ? classic_keygen_from_private(n, *forced) : classic_keygen(n, rng),
                         key_visibility::private_key);
      break;
    }
    case key_scheme::u2_case1:
    case key_scheme::u2_case2: {
      const auto setting =
          make_u2_setting(n, *scheme == key_scheme::u2_case1 ? u2_case::case1 : u2_case::case2);
      u2_key_pair kp;
      if (forced) {
        const Nat s = u2_find_generator_exponent(setting, rng).second;
        kp = u2_keygen_with(setting, s, *forced);
      } else {
        kp = u2_keygen(n, setting.kind, rng);
      }
      priv = to_key_file(kp, key_visibility::private_key);
      break;
    }
    case key_scheme::u3: {
      auto tower = std::make_shared<const unit_group_tower>(n);
      const auto kp = forced ? u3_keygen_from_private(tower, *forced) : u3_keygen(tower, rng);
      if (kp.weak()) err << "warning: b = phi^3(n) makes the public key the identity\n";
      priv = to_key_file(kp, key_visibility::private_key);
      break;
    }
  }
  key_file pub = priv;
  pub.visibility = key_visibility::public_key;
  pub.fields.pop_back();

  if (a.public_out.empty() && a.private_out.empty()) {
    out << serialize_key_file(priv);
    return;
  }
  if (!a.public_out.empty()) write_file(a.public_out, serialize_key_file(pub));
  if (!a.private_out.empty()) write_file(a.private_out, serialize_key_file(priv));
}

struct encrypt_args {
  std::string key;
  std::string message;
  std::optional<std::uint64_t> seed;
  std::string force_nonce;
};

/// Key files of either visibility serve as public keys.
key_file public_view(key_file f) {
  if (f.visibility == key_visibility::private_key) {
    f.visibility = key_visibility::public_key;
    f.fields.pop_back();
  }
  return f;
}

void cmd_encrypt(const encrypt_args& a, std::ostream& out) {
  const key_file file = public_view(parse_key_file(read_file(a.key)));
  const Nat message = parse_nat(a.message);
  const auto nonce = parse_optional(a.force_nonce);
  auto rng = make_rng(a.seed);

  switch (file.scheme) {
    case key_scheme::classic: {
      const auto pub = classic_public_from_file(file);
      const auto c = nonce ? classic_encrypt_with_nonce(pub, message, *nonce) : classic_encrypt(pub, message, rng);
      print_pair(out, c.gamma, c.delta);
      return;
    }
    case key_scheme::u2_case1:
    case key_scheme::u2_case2: {
      const auto pub = u2_public_from_file(file);
      const Nat m = u2_encode_message(pub.setting, message);
      const auto c = nonce ? u2_encrypt_with_nonce(pub, m, *nonce) : u2_encrypt(pub, m, rng);
      print_pair(out, c.q, c.delta);
      return;
    }
    case key_scheme::u3: {
      const auto pub = u3_public_from_file(file);
      if (message >= pub.tower->phi3())
        throw error(errc::message_out_of_range,
                    "message index must lie in [0, " + to_string(pub.tower->phi3()) + ")");
      const auto m = u3_encode_message(*pub.tower, message);
      const auto c = nonce ? u3_encrypt_with_nonce(pub, m, *nonce) : u3_encrypt(pub, m, rng);
      print_pair(out, c.A.value(), c.X.value());
      return;
    }
  }
}

struct decrypt_args {
  std::string key;
  std::string ciphertext;
};

void cmd_decrypt(const decrypt_args& a, std::ostream& out) {
  const key_file file = parse_key_file(read_file(a.key));
  const auto [x, y] = parse_pair(a.ciphertext);
  switch (file.scheme) {
    case key_scheme::classic:
      out << classic_decrypt(classic_private_from_file(file), {x, y}) << '\n';
      return;
    case key_scheme::u2_case1:
    case key_scheme::u2_case2: {
      const auto kp = u2_private_from_file(file);
      out << u2_decode_message(kp.pub.setting, u2_decrypt(kp, {x, y})) << '\n';
      return;
    }
    case key_scheme::u3: {
      const auto kp = u3_private_from_file(file);
      const unit_group_tower& t = *kp.pub.tower;
      auto component = [&](const Nat& v) {
        if (!t.contains_u3(v)) throw error(errc::component_not_in_u3, to_string(v) + " is not in U^3");
        return t.element(v);
      };
      out << u3_decode_message(t, u3_decrypt(kp, {component(x), component(y)})) << '\n';
      return;
    }
  }
}

struct bench_args {
  std::string orders = "10000";
  std::string slack = "2";
  std::size_t runs = 50;
  std::uint64_t seed = 0;
  std::uint64_t search_bound = kDefaultSearchBound;
  std::string csv;
  std::string gnuplot;
};

void cmd_bench(const bench_args& a, std::ostream& out, std::ostream& err) {
  const auto [n_u2, n_u3] = find_comparable_moduli(parse_nat(a.orders), parse_nat(a.slack), a.search_bound);
  err << "comparing U^2(Z_" << n_u2 << ") of order " << iterated_phi(n_u2, 2) << " with U^3(Z_" << n_u3
      << ") of order " << iterated_phi(n_u3, 3) << '\n';
  const auto records = run_benchmark({n_u2, n_u3, a.runs, a.seed, parse_nat(a.slack)});

  std::ostringstream csv;
  write_csv(csv, records);
  std::ostringstream footer;
  if (!records.empty()) write_summary(footer, summarize(records));

  if (a.csv.empty()) {
    out << csv.str() << footer.str();
  } else {
    write_file(a.csv, csv.str() + footer.str());
    out << footer.str();
  }
  if (!a.gnuplot.empty()) {
    for (auto which : {bench_scheme::u2, bench_scheme::u3}) {
      std::ostringstream plot;
      write_gnuplot(plot, records, which);
      write_file(a.gnuplot + "_" + (which == bench_scheme::u2 ? "u2" : "u3") + ".dat", plot.str());
    }
  }
}

struct dlog_args {
  std::string g;
  std::string target;
  std::string modulus;
  std::string order;
  std::string method = "auto";
};

void cmd_dlog(const dlog_args& a, std::ostream& out) {
  static const std::map<std::string, dlog_method> methods = {{"auto", dlog_method::automatic},
                                                            {"brute", dlog_method::brute_force},
                                                            {"bsgs", dlog_method::baby_step_giant_step},
                                                            {"ph", dlog_method::pohlig_hellman}};
  const Nat g = parse_nat(a.g), target = parse_nat(a.target), m = parse_nat(a.modulus);
  const Nat order = a.order.empty() ? multiplicative_order(g, m) : parse_nat(a.order);
  out << discrete_log(g, target, m, order, methods.at(a.method)) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ElGamal over the third group of units U^3(Z_n)", args.empty() ? "eg3" : args.front()};
  app.require_subcommand(1);

  explore_args ex;
  auto* explore = app.add_subcommand("explore", "Show the totient tower, U^k(Z_n) and the isomorphism f");
  explore->add_option("n", ex.n, "Modulus")->required();
  explore->add_option("k", ex.k, "Level (1, 2 or 3)")->required()->check(CLI::Range(1, 3));
  explore->add_option("--limit", ex.limit, "Largest group printed element by element")->capture_default_str();

  keygen_args kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  keygen->add_option("scheme", kg.scheme, "classic, u2-case1, u2-case2 or u3")->required();
  keygen->add_option("n", kg.n, "Prime p for classic, modulus n otherwise")->required();
  keygen->add_option("--seed", kg.seed, "Seed for the random source");
  keygen->add_option("--public-out", kg.public_out, "Write the public key here");
  keygen->add_option("--private-out", kg.private_out, "Write the private key here");
  keygen->add_option("--force-private", kg.force_private)->group("");

  encrypt_args en;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a message index under a public key");
  encrypt->add_option("key", en.key, "Key file")->required();
  encrypt->add_option("message", en.message, "Message (an index into the message space)")->required();
  encrypt->add_option("--seed", en.seed, "Seed for the random source");
  encrypt->add_option("--force-nonce", en.force_nonce)->group("");

  decrypt_args de;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext x,y with a private key");
  decrypt->add_option("key", de.key, "Private key file")->required();
  decrypt->add_option("ciphertext", de.ciphertext, "Ciphertext as x,y")->required();

  bench_args be;
  auto* bench = app.add_subcommand("bench", "Time g^i in U^2 against U^3 for comparable group orders");
  bench->add_option("--orders", be.orders, "Minimum group order")->capture_default_str();
  bench->add_option("--slack", be.slack, "Largest allowed difference of orders")->capture_default_str();
  bench->add_option("--runs", be.runs, "Samples per scheme")->capture_default_str();
  bench->add_option("--seed", be.seed, "Seed for the exponent sequence")->capture_default_str();
  bench->add_option("--search-bound", be.search_bound, "Largest modulus searched")->capture_default_str();
  bench->add_option("--csv", be.csv, "Write the CSV here instead of stdout");
  bench->add_option("--gnuplot", be.gnuplot, "Write PREFIX_u2.dat and PREFIX_u3.dat");

  dlog_args dl;
  auto* dlog = app.add_subcommand("dlog", "Solve g^e = target (mod m)");
  dlog->add_option("g", dl.g, "Base")->required();
  dlog->add_option("target", dl.target, "Target")->required();
  dlog->add_option("modulus", dl.modulus, "Modulus")->required();
  dlog->add_option("--order", dl.order, "Order of g (computed when omitted)");
  dlog->add_option("--method", dl.method, "auto, brute, bsgs or ph")
      ->check(CLI::IsMember({"auto", "brute", "bsgs", "ph"}))
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("eg3");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_invalid;
  }

  try {
    if (*explore) cmd_explore(ex, out);
    if (*keygen) cmd_keygen(kg, out, err);
    if (*encrypt) cmd_encrypt(en, out);
    if (*decrypt) cmd_decrypt(de, out);
    if (*bench) cmd_bench(be, out, err);
    if (*dlog) cmd_dlog(dl, out);
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  return exit_ok;
}

}  // namespace eg3::cli
