#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ulmext {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

// Floor-style remainder in [0, |m|).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

}  // namespace ulmext
