#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace skewlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Top 53 bits of num/2^bits as a double in [0,1). Truncating, platform-exact.
inline double fixed_to_unit_double(const BigInt& num, int bits) {
  if (num == 0) return 0.0;
  if (bits <= 62) {
    return static_cast<double>(num.convert_to<std::uint64_t>()) * std::ldexp(1.0, -bits);
  }
  BigInt top = num >> (bits - 62);
  return static_cast<double>(top.convert_to<std::uint64_t>()) * std::ldexp(1.0, -62);
}

// Round u*2^bits to the fixed-point grid. |u| < 1 expected; result may be negative.
inline BigInt unit_double_to_fixed(double u, int bits) {
  if (u == 0.0) return BigInt(0);
  int e = 0;
  double m = std::frexp(u, &e);  // u = m * 2^e, |m| in [0.5, 1)
  auto mant = static_cast<std::int64_t>(std::llround(std::ldexp(m, 53)));
  BigInt r(mant);
  int shift = bits + e - 53;
  if (shift >= 0)
    r <<= shift;
  else
    r >>= -shift;
  return r;
}

inline int bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return static_cast<int>(boost::multiprecision::msb(v < 0 ? BigInt(-v) : v)) + 1;
}

inline BigInt pow_bigint(const BigInt& base, unsigned exp) {
  BigInt r(1), b(base);
  while (exp) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt from_decimal(const std::string& s) { return BigInt(s); }

}  // namespace skewlab
