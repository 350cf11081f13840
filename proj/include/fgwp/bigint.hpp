#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

namespace fgwp {

// Lengths of produced words and exponents such as P^(N^n) routinely exceed
// 64 bits, so every length and exponent in the library is a BigInt.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& value) { return value.str(); }

inline BigInt parse_bigint(const std::string& text) { return BigInt(text); }

/// floor(log2(v)) for v > 0; 0 for v == 0.
inline std::size_t floor_log2(const BigInt& v) {
  if (v <= 0) return 0;
  return boost::multiprecision::msb(v);
}

/// ceil(log2(v)) for v > 0; 0 for v <= 1.
inline std::size_t ceil_log2(const BigInt& v) {
  if (v <= 1) return 0;
  std::size_t f = floor_log2(v);
  return (BigInt(1) << f) == v ? f : f + 1;
}

inline std::size_t popcount(BigInt v) {
  if (v < 0) v = -v;
  std::size_t count = 0;
  while (v != 0) {
    std::size_t low = boost::multiprecision::lsb(v);
    bit_unset(v, static_cast<unsigned>(low));
    ++count;
  }
  return count;
}

inline BigInt pow(const BigInt& base, std::size_t exponent) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

inline BigInt abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

inline int sign(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

/// log2 approximation for reporting and fitting.
inline double approx_log2(const BigInt& v) {
  if (v <= 0) return 0.0;
  std::size_t bits = floor_log2(v);
  if (bits < 60) return std::log2(v.convert_to<double>());
  BigInt top = v >> (bits - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

}  // namespace fgwp
