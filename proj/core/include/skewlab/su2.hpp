#pragma once

#include <array>
#include <complex>

#include "skewlab/bigfixed.hpp"
#include "skewlab/torus_angle.hpp"

namespace skewlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// How many compositions may accumulate before a unit-norm rescale.
inline constexpr int kRenormCadence = 1024;

/// Element of SU(2) stored as the first row {z, w} of
///   [  z         w       ]
///   [ -conj(w)   conj(z) ]
/// with |z|^2 + |w|^2 = 1.
struct SU2 {
  Complex z{1.0, 0.0};
  Complex w{0.0, 0.0};

  static SU2 identity() { return {}; }

  double norm2() const { return std::norm(z) + std::norm(w); }

  /// Conjugate transpose, which is the group inverse on the unit sphere.
  SU2 adjoint() const { return {std::conj(z), -w}; }

  SU2 renormalized() const {
    double s = 1.0 / std::sqrt(norm2());
    return {z * s, w * s};
  }

  SU2 negated() const { return {-z, -w}; }

  /// Quaternion coordinates (a0, a1, a2, a3): z = a0 + i a1, w = a2 + i a3.
  std::array<double, 4> quaternion() const {
    return {z.real(), z.imag(), w.real(), w.imag()};
  }
};

/// Element of su(2) stored as {i t, w}:
///   [  i t       w   ]
///   [ -conj(w)  -i t ]
struct Su2Tangent {
  double t{0.0};
  Complex w{0.0, 0.0};

  /// Conjugation-invariant norm sqrt(t^2 + |w|^2); the exp rotation half-angle.
  double norm() const { return std::sqrt(t * t + std::norm(w)); }

  Su2Tangent scaled(double s) const { return {t * s, w * s}; }
};

/// Distance in SO(3) = SU(2) mod {+Id, -Id}: min over signs of the
/// Frobenius distance of the 2x2 matrices.
struct So3Distance {
  double value{0.0};
};

SU2 compose(const SU2& u, const SU2& v);

/// Frobenius norm of u - v as 2x2 matrices (no sign quotient).
double frobenius_distance(const SU2& u, const SU2& v);

So3Distance dist_so3(const SU2& u, const SU2& v);

/// Closed form cos(n) Id + sinc(n) X, exact at n = 0 by the series limit.
SU2 exp_su2(const Su2Tangent& x);

/// Principal logarithm, norm <= pi. Throws NearAntipode when u is within
/// 1e-9 (Frobenius) of -Id: residual measurement must never guess a branch.
Su2Tangent log_su2(const SU2& u);

/// D(theta, phi) = {cos theta/2, e^{2 i pi phi} sin theta/2}.
SU2 d_matrix(double theta, double phi);

/// Diagonal loop B_k(x) = {e^{2 i pi k x}, 0}.
SU2 b_loop(const BigInt& k, const TorusAngle& x);

/// G(x) = B_k(x) D(theta, phi) B_k(x)^*. The off-diagonal entry of D picks
/// up the doubled phase e^{4 i pi k x}; evaluated in closed form with the
/// phase k*x reduced mod 1 in fixed point before any trigonometry.
SU2 conjugator_eval(const BigInt& k, double theta, double phi, const TorusAngle& x);

/// Conjugation u v u^* (adjoint action on the tangent argument).
Su2Tangent adjoint_action(const SU2& u, const Su2Tangent& x);

}  // namespace skewlab
