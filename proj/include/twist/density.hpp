#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace twist {

/// Exact rational kept in lowest terms. All verdicts on
/// solution-set densities go through this type; no floating point.
class Density
{
public:
  constexpr Density() = default;

  Density(std::int64_t num, std::int64_t den)
  {
    if (den == 0)
      throw Error(Errc::invalid_argument, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0)
      g = 1;
    num_ = num / g;
    den_ = den / g;
  }

  static Density of(std::size_t count, std::size_t total)
  { return Density(static_cast<std::int64_t>(count), static_cast<std::int64_t>(total)); }

  static Density parse(std::string_view text)
  {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos)
        return Density(std::stoll(std::string(text)), 1);
      return Density(std::stoll(std::string(text.substr(0, slash))),
                     std::stoll(std::string(text.substr(slash + 1))));
    } catch (std::logic_error const &) {
      throw Error(Errc::parse_error, "not a fraction: " + std::string(text));
    }
  }

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }

  bool is_one() const noexcept { return num_ == den_; }

  std::string str() const
  { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(Density const &, Density const &) = default;

  friend std::strong_ordering operator<=>(Density const &a, Density const &b)
  {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs)
      return std::strong_ordering::less;
    if (lhs > rhs)
      return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Density operator+(Density const &a, Density const &b)
  { return Density(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }

  friend Density operator-(Density const &a, Density const &b)
  { return Density(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }

  friend Density operator*(Density const &a, Density const &b)
  { return Density(a.num_ * b.num_, a.den_ * b.den_); }

  friend std::ostream &operator<<(std::ostream &os, Density const &d)
  { return os << d.str(); }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace twist
