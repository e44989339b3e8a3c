#ifndef EG3_BENCH_HPP
#define EG3_BENCH_HPP

// Timing of the generator power g^i in U^2(Z_n) against U^3(Z_m) for groups
// of nearly equal order.
//
// U^2 side: theta1^(s^i mod phi(n)) mod n, with theta1 and s the smallest
// generators of U(Z_n) and U(Z_phi(n)).
// U^3 side: op_pow(tower, g, i).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "eg3/error.hpp"
#include "eg3/nat.hpp"
#include "eg3/number_theory.hpp"
#include "eg3/unit_groups.hpp"

namespace eg3 {

using Rational = boost::multiprecision::cpp_rational;

enum class bench_scheme { u2, u3 };

inline const char* to_string(bench_scheme s) { return s == bench_scheme::u2 ? "U2" : "U3"; }

struct bench_record {
  bench_scheme scheme;
  std::size_t iteration;
  Nat exponent;
  std::uint64_t elapsed_ns;

  friend bool operator==(const bench_record&, const bench_record&) = default;
};

struct bench_config {
  Nat n_u2;
  Nat n_u3;
  std::size_t runs = 50;
  std::uint64_t seed = 0;
  Nat slack = 2;
};

inline constexpr std::uint64_t kDefaultSearchBound = 1'000'000;

namespace detail {

/// Totients and cyclicity of U(Z_k) for every k <= bound.
class totient_sieve {
 public:
  explicit totient_sieve(std::uint64_t bound) : phi_(bound + 1), cyclic_(bound + 1, false) {
    std::vector<std::uint32_t> spf(bound + 1, 0);
    for (std::uint64_t k = 0; k <= bound; ++k) phi_[k] = static_cast<std::uint32_t>(k);
    for (std::uint64_t p = 2; p <= bound; ++p) {
      if (spf[p] != 0) continue;
      for (std::uint64_t k = p; k <= bound; k += p) {
        if (spf[k] == 0) spf[k] = static_cast<std::uint32_t>(p);
        phi_[k] -= phi_[k] / p;
      }
    }
    // U(Z_k) is cyclic exactly for 1, 2, 4, p^e and 2p^e with p an odd prime.
    for (std::uint64_t k = 1; k <= bound; ++k) {
      if (k <= 2 || k == 4) {
        cyclic_[k] = true;
        continue;
      }
      std::uint64_t odd = k % 2 == 0 ? k / 2 : k;
      if (odd % 2 == 0 || odd == 1) continue;
      const std::uint64_t p = spf[odd];
      while (odd % p == 0) odd /= p;
      cyclic_[k] = odd == 1;
    }
  }

  std::uint64_t phi(std::uint64_t k) const { return phi_[k]; }
  bool cyclic(std::uint64_t k) const { return cyclic_[k]; }
  std::uint64_t bound() const { return phi_.size() - 1; }

  /// |U^2(Z_k)| when k is a case-1 modulus with a nontrivial U^2.
  std::optional<std::uint64_t> u2_order(std::uint64_t k) const {
    if (k < 3 || !cyclic(k) || !cyclic(phi(k))) return std::nullopt;
    const std::uint64_t order = phi(phi(k));
    if (order < 2) return std::nullopt;
    return order;
  }

  /// |U^3(Z_k)| when k has a valid tower with a nontrivial U^3.
  std::optional<std::uint64_t> u3_order(std::uint64_t k) const {
    if (k < 5 || !cyclic(k) || !cyclic(phi(k)) || !cyclic(phi(phi(k)))) return std::nullopt;
    const std::uint64_t order = phi(phi(phi(k)));
    if (order < 2) return std::nullopt;
    return order;
  }

 private:
  std::vector<std::uint32_t> phi_;
  std::vector<bool> cyclic_;
};

struct u2_parameters {
  Nat n;
  Nat phi;
  Nat order;
  Nat theta1;
  Nat s;
};

/// Range-minimum over a fixed array.
class min_tree {
 public:
  explicit min_tree(const std::vector<std::uint64_t>& values) : size_(values.size()), tree_(2 * values.size()) {
    std::copy(values.begin(), values.end(), tree_.begin() + static_cast<std::ptrdiff_t>(size_));
    for (std::size_t i = size_; i-- > 1;) tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
  }

  /// Minimum over [lo, hi].
  std::uint64_t query(std::size_t lo, std::size_t hi) const {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (lo += size_, hi += size_ + 1; lo < hi; lo /= 2, hi /= 2) {
      if (lo & 1) best = std::min(best, tree_[lo++]);
      if (hi & 1) best = std::min(best, tree_[--hi]);
    }
    return best;
  }

 private:
  std::size_t size_;
  std::vector<std::uint64_t> tree_;
};

}  // namespace detail

/// Scans n_u3 upward; the first tower-valid n_u3 that has a case-1 partner
/// wins, paired with the smallest such partner.
inline std::pair<Nat, Nat> find_comparable_moduli(const Nat& target_order, const Nat& slack,
                                                  std::uint64_t search_bound = kDefaultSearchBound) {
  if (target_order < 2) throw error(errc::invalid_argument, "target order must be at least 2");
  require_non_negative(slack, "slack");
  const auto none = std::numeric_limits<std::uint64_t>::max();
  if (target_order > search_bound) throw error(errc::no_pair_found, "target order exceeds the search bound");
  const std::uint64_t target = to_u64(target_order);
  const detail::totient_sieve sieve(search_bound);

  // smallest_u2[o] = smallest case-1 modulus whose U^2 has order o.
  std::vector<std::uint64_t> smallest_u2(search_bound + 1, none);
  for (std::uint64_t k = 3; k <= search_bound; ++k)
    if (auto o = sieve.u2_order(k); o && *o >= target && smallest_u2[*o] == none) smallest_u2[*o] = k;
  const detail::min_tree tree(smallest_u2);

  for (std::uint64_t m = 5; m <= search_bound; ++m) {
    const auto o = sieve.u3_order(m);
    if (!o || *o < target) continue;
    const std::uint64_t lo = slack >= *o ? 0 : *o - to_u64(slack);
    const std::uint64_t hi = slack >= search_bound - *o ? search_bound : *o + to_u64(slack);
    const std::uint64_t partner = tree.query(std::max(lo, target), hi);
    if (partner != none) return {Nat(partner), Nat(m)};
  }
  throw error(errc::no_pair_found, "no comparable moduli up to " + std::to_string(search_bound));
}

/// U^2 and U^3 timings, interleaved per iteration (U2 first).
inline std::vector<bench_record> run_benchmark(const bench_config& config) {
  const unit_group_tower tower(config.n_u3);
  const detail::u2_parameters u2 = [&] {
    if (!is_cyclic_unit_group(config.n_u2))
      throw tower_error(tower_level::n, "U(Z_" + to_string(config.n_u2) + ") is not cyclic");
    const Nat phi = euler_phi(config.n_u2);
    if (!is_cyclic_unit_group(phi)) throw tower_error(tower_level::phi1, "U(Z_" + to_string(phi) + ") is not cyclic");
    return detail::u2_parameters{config.n_u2, phi, euler_phi(phi), find_primitive_root(config.n_u2), find_primitive_root(phi)};
  }();
  if (u2.order < 2 || tower.phi3() < 2) throw error(errc::degenerate_group, "benchmark groups must have order >= 2");
  const Nat gap = u2.order > tower.phi3() ? Nat(u2.order - tower.phi3()) : Nat(tower.phi3() - u2.order);
  if (gap > config.slack)
    throw error(errc::invalid_argument, "group orders " + to_string(u2.order) + " and " + to_string(tower.phi3()) +
                                            " differ by more than " + to_string(config.slack));

  const group_element g = tower.element(tower.g());
  auto u2_power = [&](const Nat& i) { return mod_pow(u2.theta1, mod_pow(u2.s, i, u2.phi), u2.n); };
  auto u3_power = [&](const Nat& i) { return op_pow(tower, g, i); };

  // Warm-up, so first-touch costs stay out of the samples.
  Nat sink = u2_power(1) + u3_power(1).value();

  std::mt19937_64 rng(config.seed);
  std::vector<bench_record> records;
  records.reserve(2 * config.runs);
  using clock = std::chrono::steady_clock;
  auto elapsed = [](clock::time_point a, clock::time_point b) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
  };
  for (std::size_t it = 0; it < config.runs; ++it) {
    const Nat i2 = uniform_nat(rng, 1, u2.order);
    const Nat i3 = uniform_nat(rng, 1, tower.phi3());

    auto t0 = clock::now();
    Nat r2 = u2_power(i2);
    auto t1 = clock::now();
    records.push_back({bench_scheme::u2, it, i2, elapsed(t0, t1)});

    t0 = clock::now();
    group_element r3 = u3_power(i3);
    t1 = clock::now();
    records.push_back({bench_scheme::u3, it, i3, elapsed(t0, t1)});

    sink += r2 + r3.value();
  }
  if (sink < 0) throw error(errc::invalid_argument, "unreachable");
  return records;
}

struct scheme_summary {
  std::size_t count = 0;
  Rational mean;
  Rational median;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
};

struct bench_summary {
  scheme_summary u2;
  scheme_summary u3;
  /// mean(U3) / mean(U2); empty when the U2 mean is zero.
  std::optional<Rational> ratio;
};

inline bench_summary summarize(const std::vector<bench_record>& records) {
  auto one = [&](bench_scheme which) {
    std::vector<std::uint64_t> xs;
    for (const auto& r : records)
      if (r.scheme == which) xs.push_back(r.elapsed_ns);
    if (xs.empty()) throw error(errc::empty_input, std::string("no ") + to_string(which) + " records");
    std::sort(xs.begin(), xs.end());
    scheme_summary s;
    s.count = xs.size();
    Nat total = 0;
    for (auto x : xs) total += x;
    s.mean = Rational(total, Nat(xs.size()));
    const std::size_t mid = xs.size() / 2;
    s.median = xs.size() % 2 == 1 ? Rational(Nat(xs[mid])) : Rational(Nat(xs[mid - 1]) + xs[mid], Nat(2));
    s.min = xs.front();
    s.max = xs.back();
    return s;
  };
  bench_summary out{one(bench_scheme::u2), one(bench_scheme::u3), std::nullopt};
  if (out.u2.mean != 0) out.ratio = out.u3.mean / out.u2.mean;
  return out;
}

/// Rational rendered with a fixed number of decimals (truncated).
inline std::string to_decimal(const Rational& r, unsigned places = 3) {
  const Nat scale = boost::multiprecision::pow(Nat(10), places);
  const Nat scaled = boost::multiprecision::numerator(r) * scale / boost::multiprecision::denominator(r);
  std::string digits = to_string(scaled);
  if (places == 0) return digits;
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return digits;
}

inline void write_csv(std::ostream& out, const std::vector<bench_record>& records) {
  out << "scheme,iteration,exponent,elapsed_ns\n";
  for (const auto& r : records)
    out << to_string(r.scheme) << ',' << r.iteration << ',' << r.exponent << ',' << r.elapsed_ns << '\n';
}

inline void write_summary(std::ostream& out, const bench_summary& s) {
  for (auto [name, part] : {std::pair{"U2", &s.u2}, std::pair{"U3", &s.u3}})
    out << "# " << name << " count=" << part->count << " mean_ns=" << to_decimal(part->mean)
        << " median_ns=" << to_decimal(part->median) << " min_ns=" << part->min << " max_ns=" << part->max << '\n';
  out << "# ratio_u3_over_u2=" << (s.ratio ? to_decimal(*s.ratio) : std::string("undefined")) << '\n';
}

/// Two columns, iteration and elapsed_ns, for one scheme.
inline void write_gnuplot(std::ostream& out, const std::vector<bench_record>& records, bench_scheme which) {
  out << "# iteration elapsed_ns (" << to_string(which) << ")\n";
  for (const auto& r : records)
    if (r.scheme == which) out << r.iteration << ' ' << r.elapsed_ns << '\n';
}

}  // namespace eg3

#endif  // EG3_BENCH_HPP
