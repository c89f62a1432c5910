#pragma once

#include <string>

#include "certisqrt/floatmodel.hpp"
#include "certisqrt/lut.hpp"
#include "oracles.hpp"

namespace testing_support {

using namespace certisqrt;

inline Rational R(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }
inline Rational R(oracle::Q q) { return R(static_cast<long>(q.num), static_cast<long>(q.den)); }

// delta = 1/100, inf = sup = 16, base 2, stp = eps = 1/4
inline ProfileRef demo_fix() {
  static ProfileRef p = make_fix_profile(100, 1600, 1600);
  return p;
}
inline FixVal dv(long count) { return FixVal(BigInt(count), demo_fix()); }
inline FloatProfileRef demo_float() {
  static FloatProfileRef f = make_float_profile(2, demo_fix(), Rational(65536), Rational(65536));
  return f;
}
inline const RootTable& demo_table() {
  static RootTable t = build_root_table(demo_fix(), dv(25));
  return t;
}

inline std::string fixture(const std::string& name) { return std::string(CERTISQRT_FIXTURES) + "/" + name; }

}  // namespace testing_support
