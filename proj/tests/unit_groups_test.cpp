#include "eg3/unit_groups.hpp"

#include <map>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace eg3 {
namespace {

std::vector<Nat> nats(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

std::vector<Nat> as_nats(const std::set<std::uint64_t>& xs) { return {xs.begin(), xs.end()}; }

TEST(BuildTower, ElevenMatchesWorkedExample) {
  const unit_group_tower t(11);
  EXPECT_EQ(t.phi1(), 10);
  EXPECT_EQ(t.phi2(), 4);
  EXPECT_EQ(t.phi3(), 2);
  EXPECT_EQ(t.g1(), 2);
  EXPECT_EQ(t.g2(), 3);
  EXPECT_EQ(t.g3(), 3);
  EXPECT_EQ(t.g(), 7);
}

TEST(BuildTower, EightyOne) {
  const unit_group_tower t(81);
  EXPECT_EQ(t.phi1(), 54);
  EXPECT_EQ(t.phi2(), 18);
  EXPECT_EQ(t.phi3(), 6);
  EXPECT_EQ(t.g(), 50);
  EXPECT_EQ(t.identity(), 32);
}

TEST(BuildTower, NamesFailingLevel) {
  auto level_of = [](int n) -> std::optional<tower_level> {
    try {
      unit_group_tower t(n);
    } catch (const tower_error& e) {
      EXPECT_EQ(e.code(), errc::tower_not_cyclic);
      return e.level();
    }
    return std::nullopt;
  };
  EXPECT_EQ(level_of(8), tower_level::n);
  EXPECT_EQ(level_of(17), tower_level::phi1);  // phi = 16
  EXPECT_EQ(level_of(27), std::nullopt);
  // 37: phi = 36 (U not cyclic)
  EXPECT_EQ(level_of(37), tower_level::phi1);
  // 23: phi = 22, phi^2 = 10, fine; 47: phi = 46, phi^2 = 22 fine; 29: phi 28 fails
  EXPECT_EQ(level_of(29), tower_level::phi1);
  // 19: phi = 18, phi^2 = 6; 43: phi = 42 fails; 83: phi = 82, phi^2 = 40 fails
  EXPECT_EQ(level_of(83), tower_level::phi2);
  EXPECT_THROW(unit_group_tower(4), error);
}

TEST(BuildTower, DegenerateTowersAccepted) {
  const unit_group_tower five(5);
  EXPECT_EQ(five.phi3(), 1);
  EXPECT_EQ(five.g(), five.identity());
  EXPECT_EQ(iso_f(five, five.g()), 0);

  const unit_group_tower six(6);  // phi^2(6) = 1
  EXPECT_EQ(six.phi2(), 1);
  EXPECT_EQ(enumerate_u_k(6, 3), nats({5}));
  EXPECT_EQ(iso_f(six, 5), 0);
  EXPECT_EQ(iso_f_inv(six, 0), 5);
}

TEST(BuildTower, InvariantsForAllValidModuli) {
  for (int n = 5; n <= 2000; ++n) {
    std::optional<unit_group_tower> t;
    try {
      t.emplace(n);
    } catch (const tower_error&) {
      continue;
    }
    ASSERT_EQ(multiplicative_order(t->g1(), t->n()), t->phi1()) << n;
    if (t->phi1() > 2) {
      ASSERT_EQ(multiplicative_order(t->g2(), t->phi1()), t->phi2()) << n;
    }
    if (t->phi2() > 2) {
      ASSERT_EQ(multiplicative_order(t->g3(), t->phi2()), t->phi3()) << n;
    }
    ASSERT_EQ(t->g(), mod_pow(t->g1(), mod_pow(t->g2(), t->g3(), t->phi1()), t->n()));
    ASSERT_EQ(iso_f(*t, t->g()), Nat(1) % t->phi3()) << n;
    ASSERT_EQ(iso_f_inv(*t, 0), t->identity());
  }
}

TEST(EnumerateUk, Examples) {
  EXPECT_EQ(enumerate_u_k(11, 3), nats({7, 8}));
  EXPECT_EQ(enumerate_u_k(81, 3), nats({5, 23, 32, 50, 59, 77}));
  EXPECT_EQ(enumerate_u_k(11, 1), nats({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_EQ(enumerate_u_k(11, 2), nats({2, 6, 7, 8}));
}

TEST(EnumerateUk, Errors) {
  try {
    enumerate_u_k(8, 2);
    FAIL();
  } catch (const tower_error& e) {
    EXPECT_EQ(e.level(), tower_level::n);
  }
  try {
    enumerate_u_k(17, 2);
    FAIL();
  } catch (const tower_error& e) {
    EXPECT_EQ(e.level(), tower_level::phi1);
  }
  // 17 is fine for k = 1: its own unit group is cyclic.
  EXPECT_EQ(enumerate_u_k(17, 1).size(), 16u);
  try {
    enumerate_u_k(Nat(2'000'003), 1);  // phi(n) well above the limit
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::enumeration_too_large);
  }
  EXPECT_THROW(enumerate_u_k(11, 4), error);
}

TEST(EnumerateUk, MatchesBruteForceOracles) {
  for (std::uint64_t n = 5; n <= 2000; ++n) {
    if (!is_cyclic_unit_group(n) || !is_cyclic_unit_group(euler_phi(n))) continue;
    ASSERT_EQ(enumerate_u_k(n, 2), as_nats(oracle::u2(n))) << n;
    if (!is_cyclic_unit_group(iterated_phi(n, 2))) continue;
    ASSERT_EQ(enumerate_u_k(n, 3), as_nats(oracle::u3(n))) << n;
  }
}

TEST(EnumerateUk, CardinalityIsIteratedPhi) {
  for (std::uint64_t n = 5; n <= 1500; ++n) {
    if (!is_cyclic_unit_group(n)) continue;
    EXPECT_EQ(enumerate_u_k(n, 1).size(), oracle::iterated_phi(n, 1));
    if (!is_cyclic_unit_group(euler_phi(n))) continue;
    EXPECT_EQ(enumerate_u_k(n, 2).size(), oracle::iterated_phi(n, 2));
    if (!is_cyclic_unit_group(iterated_phi(n, 2))) continue;
    EXPECT_EQ(enumerate_u_k(n, 3).size(), oracle::iterated_phi(n, 3));
  }
}

TEST(IsoF, Examples) {
  const unit_group_tower eleven(11), t81(81);
  EXPECT_EQ(iso_f(eleven, 7), 1);
  EXPECT_EQ(iso_f(eleven, 8), 0);
  EXPECT_EQ(iso_f(t81, 77), 5);
  try {
    iso_f(eleven, 2);  // in U^2 but not U^3
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_in_u3);
  }
  EXPECT_THROW(iso_f(eleven, 0), error);
  EXPECT_THROW(iso_f(eleven, 11), error);
}

TEST(IsoF, FullTableForEightyOne) {
  const unit_group_tower t(81);
  const std::map<int, int> table = {{5, 4}, {23, 3}, {32, 0}, {50, 1}, {59, 2}, {77, 5}};
  for (auto [x, r] : table) {
    EXPECT_EQ(iso_f(t, x), r);
    EXPECT_EQ(iso_f_inv(t, r), x);
  }
}

TEST(IsoFInv, Examples) {
  const unit_group_tower eleven(11), t81(81);
  EXPECT_EQ(iso_f_inv(t81, 1), 50);
  EXPECT_EQ(iso_f_inv(t81, 4), 5);
  EXPECT_EQ(iso_f_inv(eleven, 0), 8);
  try {
    iso_f_inv(t81, 6);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::out_of_range);
  }
}

// Isomorphism properties, exhaustive for n <= 500. Also exercised with the
// log tables disabled so the on-demand discrete-log path is covered.
class IsoProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(IsoProperties, BijectiveHomomorphism) {
  tower_options opts;
  opts.log_table_limit = GetParam();
  for (int n = 5; n <= 500; ++n) {
    std::optional<unit_group_tower> t;
    try {
      t.emplace(n, opts);
    } catch (const tower_error&) {
      continue;
    }
    const auto u3 = enumerate_u_k(*t, 3);
    const std::uint64_t order = t->phi3().convert_to<std::uint64_t>();
    ASSERT_EQ(u3.size(), order);
    std::set<Nat> images;
    for (const Nat& x : u3) {
      const Nat fx = iso_f(*t, x);
      ASSERT_LT(fx, t->phi3());
      ASSERT_EQ(iso_f_inv(*t, fx), x);
      images.insert(fx);
    }
    ASSERT_EQ(images.size(), order) << n;
    for (std::uint64_t r = 0; r < order; ++r) ASSERT_EQ(iso_f(*t, iso_f_inv(*t, r)), r);

    for (const Nat& x : u3)
      for (const Nat& y : u3) {
        const auto xy = op_otimes(*t, t->element(x), t->element(y));
        ASSERT_EQ(iso_f(*t, xy.value()), (iso_f(*t, x) + iso_f(*t, y)) % t->phi3()) << n;
      }

    // Powers of the generator visit every element exactly once.
    std::set<Nat> visited;
    const auto g = t->element(t->g());
    for (std::uint64_t e = 0; e < order; ++e) visited.insert(op_pow(*t, g, e).value());
    ASSERT_EQ(std::vector<Nat>(visited.begin(), visited.end()), u3);
  }
}

INSTANTIATE_TEST_SUITE_P(LogTables, IsoProperties, ::testing::Values(std::uint64_t{1} << 20, std::uint64_t{0}));

TEST(U3Generator, Examples) {
  EXPECT_EQ(u3_generator(unit_group_tower(11)), 7);
  EXPECT_EQ(u3_generator(unit_group_tower(81)), 50);
}

TEST(OpOplus, Examples) {
  const unit_group_tower t(11);
  EXPECT_EQ(op_oplus(t, 8, 7), oracle::pow_chain(8, 7, 11));
  EXPECT_EQ(op_oplus(t, 8, 7), 2);
  for (int x : {2, 6, 7, 8}) EXPECT_EQ(op_oplus(t, x, t.g1()), x);
  EXPECT_EQ(op_oplus(t, 2, 2), 2);
  try {
    op_oplus(t, 3, 2);  // 3 = 2^8 has order 5
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_in_u2);
  }
}

TEST(OpOplus, MultipliesLogsExhaustively) {
  for (std::uint64_t n = 5; n <= 200; ++n) {
    std::optional<unit_group_tower> t;
    try {
      t.emplace(n);
    } catch (const tower_error&) {
      continue;
    }
    const std::uint64_t phi = oracle::phi(n), g1 = t->g1().convert_to<std::uint64_t>();
    const auto u2 = oracle::u2(n);
    for (std::uint64_t x : u2)
      for (std::uint64_t y : u2) {
        const Nat z = op_oplus(*t, x, y);
        ASSERT_TRUE(u2.count(z.convert_to<std::uint64_t>())) << n;
        const auto lx = *oracle::dlog(g1, x, n, phi), ly = *oracle::dlog(g1, y, n, phi);
        ASSERT_EQ(*oracle::dlog(g1, z.convert_to<std::uint64_t>(), n, phi), lx * ly % phi);
      }
  }
}

TEST(OpOtimes, Examples) {
  const unit_group_tower t(81);
  EXPECT_EQ(op_otimes(t, t.element(77), t.element(59)).value(), 50);
  EXPECT_EQ(op_otimes(t, t.element(50), t.element(5)).value(), 77);
  const auto id = t.element(t.identity());
  for (const Nat& x : enumerate_u_k(t, 3)) EXPECT_EQ(op_otimes(t, t.element(x), id).value(), x);
}

TEST(OpOtimes, RejectsForeignElements) {
  const unit_group_tower t81(81), t11(11);
  try {
    op_otimes(t81, t11.element(7), t81.element(50));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_in_u3);
  }
  EXPECT_THROW(t81.element(2), error);
}

TEST(OpPow, Examples) {
  const unit_group_tower t(81);
  EXPECT_EQ(op_pow(t, t.element(50), 4).value(), 5);
  EXPECT_EQ(op_pow(t, t.element(5), 2).value(), 59);
  EXPECT_EQ(op_pow(t, t.element(59), 4).value(), 59);
  EXPECT_EQ(op_pow(t, t.element(59), 0).value(), t.identity());
  EXPECT_EQ(op_pow(t, t.element(59), 1).value(), 59);
  EXPECT_EQ(op_pow(t, t.element(5), Nat("1000000000000000000001")).value(),
            op_pow(t, t.element(5), Nat("1000000000000000000001") % 6).value());
}

TEST(OpInverse, Examples) {
  const unit_group_tower t(81);
  EXPECT_EQ(op_inverse(t, t.element(59)).value(), 5);
  EXPECT_EQ(op_inverse(t, t.element(t.identity())).value(), t.identity());
  const auto inv77 = op_inverse(t, t.element(77));
  EXPECT_EQ(iso_f(t, inv77.value()), 1);
  EXPECT_EQ(inv77.value(), 50);
  for (const Nat& x : enumerate_u_k(t, 3))
    EXPECT_EQ(op_otimes(t, t.element(x), op_inverse(t, t.element(x))).value(), t.identity());
}

TEST(ThreePowerFamilies, PowersOfThreeAndTwiceThose) {
  Nat p = 1;
  for (int alpha = 1; alpha <= 6; ++alpha) {
    p *= 3;
    for (const Nat& n : std::array<Nat, 2>{p, Nat(2 * p)}) {
      EXPECT_TRUE(is_cyclic_unit_group(n));
      EXPECT_TRUE(is_cyclic_unit_group(euler_phi(n)));
      EXPECT_TRUE(is_cyclic_unit_group(iterated_phi(n, 2)));
    }
  }
}

}  // namespace
}  // namespace eg3
