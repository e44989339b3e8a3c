#ifndef EG3_ERROR_HPP
#define EG3_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace eg3 {

enum class errc {
  invalid_argument,
  not_invertible,
  moduli_not_coprime,
  not_in_subgroup,
  not_cyclic,
  tower_not_cyclic,
  enumeration_too_large,
  not_in_u2,
  not_in_u3,
  out_of_range,
  not_prime,
  message_out_of_range,
  message_not_in_u2,
  message_not_in_u3,
  component_out_of_range,
  component_not_in_u3,
  invalid_case2_modulus,
  degenerate_group,
  no_pair_found,
  empty_input,
  malformed_file,
};

inline constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::not_invertible: return "NotInvertible";
    case errc::moduli_not_coprime: return "ModuliNotCoprime";
    case errc::not_in_subgroup: return "NotInSubgroup";
    case errc::not_cyclic: return "NotCyclic";
    case errc::tower_not_cyclic: return "TowerNotCyclic";
    case errc::enumeration_too_large: return "EnumerationTooLarge";
    case errc::not_in_u2: return "NotInU2";
    case errc::not_in_u3: return "NotInU3";
    case errc::out_of_range: return "OutOfRange";
    case errc::not_prime: return "NotPrime";
    case errc::message_out_of_range: return "MessageOutOfRange";
    case errc::message_not_in_u2: return "MessageNotInU2";
    case errc::message_not_in_u3: return "MessageNotInU3";
    case errc::component_out_of_range: return "ComponentOutOfRange";
    case errc::component_not_in_u3: return "ComponentNotInU3";
    case errc::invalid_case2_modulus: return "InvalidCase2Modulus";
    case errc::degenerate_group: return "DegenerateGroup";
    case errc::no_pair_found: return "NoPairFound";
    case errc::empty_input: return "EmptyInput";
    case errc::malformed_file: return "MalformedFile";
  }
  return "Unknown";
}

/// Level of a totient tower: the modulus n itself, phi(n), or phi(phi(n)).
enum class tower_level { n, phi1, phi2 };

inline constexpr std::string_view to_string(tower_level level) noexcept {
  switch (level) {
    case tower_level::n: return "n";
    case tower_level::phi1: return "phi(n)";
    case tower_level::phi2: return "phi(phi(n))";
  }
  return "?";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Raised when a unit group along the totient tower is not cyclic.
class tower_error : public error {
 public:
  tower_error(tower_level level, const std::string& what)
      : error(errc::tower_not_cyclic,
              "level " + std::string(to_string(level)) + ": " + what),
        level_(level) {}

  tower_level level() const noexcept { return level_; }

 private:
  tower_level level_;
};

}  // namespace eg3

#endif  // EG3_ERROR_HPP
