#include "skewlab/su2.hpp"

#include <algorithm>
#include <cmath>

namespace skewlab {

namespace {

// sin(x)/x with the series limit at 0.
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

SU2 compose(const SU2& u, const SU2& v) {
  return {u.z * v.z - u.w * std::conj(v.w), u.z * v.w + u.w * std::conj(v.z)};
}

double frobenius_distance(const SU2& u, const SU2& v) {
  double s = std::norm(u.z - v.z) + std::norm(u.w - v.w);
  return std::sqrt(2.0 * s);
}

So3Distance dist_so3(const SU2& u, const SU2& v) {
  return {std::min(frobenius_distance(u, v), frobenius_distance(u, v.negated()))};
}

SU2 exp_su2(const Su2Tangent& x) {
  double n = x.norm();
  double s = sinc(n);
  return {Complex(std::cos(n), x.t * s), x.w * s};
}

Su2Tangent log_su2(const SU2& u) {
  double c = u.z.real();
  double s = std::sqrt(u.z.imag() * u.z.imag() + std::norm(u.w));
  if (c < 0.0) {
    SU2 minus_id{Complex(-1.0, 0.0), Complex(0.0, 0.0)};
    if (frobenius_distance(u, minus_id) < 1e-9)
      throw Error(ErrorCode::NearAntipode,
                  "log_su2 within 1e-9 of -Id; branch ambiguous (norm pi)");
  }
  double n = std::atan2(s, c);
  double f = (s < 1e-8) ? 1.0 : n / s;  // near Id; the antipode was excluded above
  return {u.z.imag() * f, u.w * f};
}

SU2 d_matrix(double theta, double phi) {
  double c = std::cos(theta / 2.0);
  double s = std::sin(theta / 2.0);
  return {Complex(c, 0.0), std::polar(s, kTwoPi * phi)};
}

SU2 b_loop(const BigInt& k, const TorusAngle& x) {
  double u = x.times(k).to_unit_double();
  return {std::polar(1.0, kTwoPi * u), Complex(0.0, 0.0)};
}

SU2 conjugator_eval(const BigInt& k, double theta, double phi, const TorusAngle& x) {
  double u = x.times(k).to_unit_double();
  double c = std::cos(theta / 2.0);
  double s = std::sin(theta / 2.0);
  return {Complex(c, 0.0), std::polar(s, kTwoPi * (phi + 2.0 * u))};
}

Su2Tangent adjoint_action(const SU2& u, const Su2Tangent& x) {
  // u X u^* expanded on the {it, w} coordinates.
  // X = [[it, w], [-conj w, -it]]; result keeps the same shape.
  Complex it(0.0, x.t);
  Complex a = u.z, b = u.w;
  // Row-by-row product u X:
  Complex m11 = a * it + b * (-std::conj(x.w));
  Complex m12 = a * x.w + b * (-it);
  // (u X) u^*: u^* = [[conj a, -b], [conj b, a]]
  Complex r11 = m11 * std::conj(a) + m12 * std::conj(b);
  Complex r12 = m11 * (-b) + m12 * a;
  return {r11.imag(), r12};
}

}  // namespace skewlab
