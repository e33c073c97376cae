#pragma once

#include <cstdint>
#include <string>

#include "maxgcd/natural.hpp"

namespace maxgcd {

// alpha as given on the command line: either a decimal literal, or the exact
// logarithm of an integer ("ln(10)"), kept symbolic so floor(e^{alpha n})
// carries no representation error.
struct Alpha {
  enum class Kind { Decimal, LogInteger };
  Kind kind = Kind::Decimal;
  std::string decimal = "1";  // when kind == Decimal
  Natural log_arg;            // when kind == LogInteger: alpha = ln(log_arg)

  static Alpha parse(const std::string& text);
  double approx() const;
  std::string str() const;
};

inline constexpr std::size_t kDefaultBitCap = std::size_t{1} << 20;

// floor(e^{alpha*n}), exact: interval arithmetic at increasing precision
// until the enclosure contains no integer boundary. Throws resource_error
// when the result would exceed bit_cap bits.
Natural floor_exp(const Alpha& alpha, std::uint64_t n,
                  std::size_t bit_cap = kDefaultBitCap);

// ceil(n^{2/s} * b^{1/s}), exact. s in (0,1) and b > 0 are taken as the
// dyadic rationals their doubles denote; exact rational values (e.g.
// s = 0.5, b = 1) are detected and computed without rounding.
Natural ceil_power_threshold(std::uint64_t n, double s, double b,
                             std::size_t bit_cap = kDefaultBitCap);

// Sign of v - n^e for dyadic e > 0, certified (exact on boundaries).
int compare_with_power(const Natural& v, std::uint64_t n, double e);

// Sign of v - n^2/ln(n^theta); the threshold is irrational for n >= 2, so
// interval refinement always separates.
int compare_with_lambda_threshold(const Natural& v, std::uint64_t n,
                                  double theta);

}  // namespace maxgcd
