// Walks through the n = 11 and n = 81 towers and one U^3 encryption.

#include <iostream>
#include <memory>

#include "eg3/elgamal_u3.hpp"
#include "eg3/unit_groups.hpp"

namespace {

void show_tower(const eg3::unit_group_tower& t) {
  std::cout << "n = " << t.n() << ": phi chain " << t.phi1() << ", " << t.phi2() << ", " << t.phi3()
            << "; generators " << t.g1() << ", " << t.g2() << ", " << t.g3() << "; g = " << t.g() << '\n';
  for (const auto& x : eg3::enumerate_u_k(t, 3)) std::cout << "  f(" << x << ") = " << eg3::iso_f(t, x) << '\n';
}

}  // namespace

int main() {
  show_tower(eg3::build_tower(11));

  auto tower = std::make_shared<const eg3::unit_group_tower>(81);
  show_tower(*tower);

  const auto key = eg3::u3_keygen_from_private(tower, 4);
  const auto m = eg3::u3_encode_message(*tower, 5);
  const auto c = eg3::u3_encrypt_with_nonce(key.pub, m, 2);
  std::cout << "public B = " << key.pub.B.value() << '\n'
            << "encrypt " << m.value() << " with a = 2 -> (" << c.A.value() << ", " << c.X.value() << ")\n"
            << "decrypt -> " << eg3::u3_decrypt(key, c).value() << '\n';
}
