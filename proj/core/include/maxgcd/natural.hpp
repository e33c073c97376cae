#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace maxgcd {

// Arbitrary-precision non-negative integer. Sampled values, GCDs and range
// bounds all live here; operations that would produce a negative value are
// contract violations.
using Natural = mpz_class;

inline std::size_t bit_length(const Natural& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::string to_decimal(const Natural& v) { return v.get_str(10); }

// log(v) for huge v, without converting the whole number to double.
inline double log_natural(const Natural& v) {
  signed long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * 0.6931471805599453;
}

}  // namespace maxgcd
