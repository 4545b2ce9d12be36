#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twist {

enum class Errc {
  not_latin,
  not_associative,
  no_identity,
  no_inverse,
  order_cap_exceeded,
  arity_too_small,
  not_subgroup,
  not_normal,
  not_invariant,
  not_automorphism,
  automorphism_order_mismatch,
  unknown_family,
  parse_error,
  validation_error,
  empty_set,
  invalid_argument,
};

inline std::string_view to_string(Errc code)
{
  switch (code) {
  case Errc::not_latin: return "NotLatin";
  case Errc::not_associative: return "NotAssociative";
  case Errc::no_identity: return "NoIdentity";
  case Errc::no_inverse: return "NoInverse";
  case Errc::order_cap_exceeded: return "OrderCapExceeded";
  case Errc::arity_too_small: return "ArityTooSmall";
  case Errc::not_subgroup: return "NotSubgroup";
  case Errc::not_normal: return "NotNormal";
  case Errc::not_invariant: return "NotInvariant";
  case Errc::not_automorphism: return "NotAutomorphism";
  case Errc::automorphism_order_mismatch: return "AutomorphismOrderMismatch";
  case Errc::unknown_family: return "UnknownFamily";
  case Errc::parse_error: return "ParseError";
  case Errc::validation_error: return "ValidationError";
  case Errc::empty_set: return "EmptySet";
  case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error
{
public:
  Error(Errc code, std::string const &what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what),
    code_(code)
  {}

  Errc code() const noexcept
  { return code_; }

private:
  Errc code_;
};

} // namespace twist
