#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/bigfixed.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/torus_angle.hpp"

namespace skewlab {

/// Description of the base rotation alpha in (0,1). Realization to a given
/// number of fixed-point bits is deterministic, with the true value certified
/// to lie in [num, num+1] / 2^bits.
struct RotationSpec {
  enum class Kind { Quadratic, ContinuedFraction, Rational, Decimal };

  Kind kind{Kind::Quadratic};

  // (a + b*sqrt(c)) / d, discriminant c positive and non-square
  long long quad_a{-1}, quad_b{1}, quad_d{2};
  unsigned long long quad_c{5};

  // partial quotients [a0; a1, a2, ...]; when periodic_tail is true the last
  // quotient repeats forever, otherwise the list is finite (a rational).
  std::vector<BigInt> cf_quotients;
  bool cf_periodic_tail{false};

  BigInt rat_p{0}, rat_q{1};

  std::string decimal_digits;  // "0.xxxxx"

  int precision_bits{256};

  static RotationSpec golden(int precision_bits = 256);

  /// Canonical text form, e.g. quadratic:(-1+sqrt(5))/2, cf:[0;1,1,1,...],
  /// rational:7/16, decimal:0.1234.
  static RotationSpec parse(const std::string& text, int precision_bits = 256);
  std::string to_text() const;

  bool is_rational() const;
};

/// floor(alpha * 2^P); the true alpha lies within one ulp above.
TorusAngle realize(const RotationSpec& spec);
TorusAngle realize(const RotationSpec& spec, int precision_bits);

struct Convergent {
  BigInt p, q;
};

/// First n continued-fraction convergents p_i/q_i of alpha, certified
/// against the fixed-point realization interval. For a rational alpha the
/// list stops at the exact value. Throws InsufficientPrecision when the
/// interval can no longer pin down a partial quotient.
std::vector<Convergent> cf_convergents(const RotationSpec& spec, int n);

struct AngleWithError {
  TorusAngle value;
  double error_bound;  // certified: |true k*alpha mod 1 - value| <= error_bound
};

/// k * alpha mod 1 in exact fixed point. Guarded by |k| < 2^(P/2 - 32).
AngleWithError angle_times_int(const BigInt& k, const RotationSpec& spec);
AngleWithError angle_times_int(const BigInt& k, const TorusAngle& alpha);

struct DiophantineEstimate {
  double gamma{0.0};
  double tau{1.0};      // tau_raw rounded to the nearest 0.1
  double tau_raw{1.0};
  BigInt scanned_up_to{0};
  BigInt worst_k{0};
  // best-approximation records (k, dist_int(k*alpha)) encountered by the scan
  std::vector<std::pair<BigInt, double>> records;
};

/// Exhaustive scan of k = 1..K: dist_int(k*alpha) >= gamma * k^-tau for all
/// scanned k, equality at worst_k. Throws RationalAlpha when the certified
/// interval around some k*alpha contains an integer.
DiophantineEstimate diophantine_scan(const RotationSpec& spec, const BigInt& K);

}  // namespace skewlab
