#pragma once

#include <cstdint>
#include <random>

#include "skewlab/su2.hpp"

namespace skewlab {

/// Deterministic sampling helpers: mt19937_64 with an explicit bits-to-unit
/// mapping, so streams are identical across standard libraries.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : eng_(seed) {}

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Haar-uniform SU(2) element (uniform on the unit 3-sphere).
  SU2 haar_su2() {
    // Marsaglia: two points in the unit disc.
    double x1, x2, s1, x3, x4, s2;
    do {
      x1 = 2.0 * unit() - 1.0;
      x2 = 2.0 * unit() - 1.0;
      s1 = x1 * x1 + x2 * x2;
    } while (s1 >= 1.0 || s1 == 0.0);
    do {
      x3 = 2.0 * unit() - 1.0;
      x4 = 2.0 * unit() - 1.0;
      s2 = x3 * x3 + x4 * x4;
    } while (s2 >= 1.0 || s2 == 0.0);
    double f = std::sqrt((1.0 - s1) / s2);
    return SU2{Complex(x1, x2), Complex(x3 * f, x4 * f)};
  }

  TorusAngle torus_angle(int bits) {
    BigInt num = 0;
    for (int got = 0; got < bits; got += 64) num = (num << 64) | BigInt(eng_());
    return TorusAngle(num, bits);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace skewlab
