#pragma once

#include <string>
#include <utility>

#include "skewlab/bigfixed.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

enum class Grid { Z, ZHalf };

/// Point on T = R/Z in fixed point: numerator / 2^bits with
/// numerator in [0, 2^bits). Addition and integer multiplication wrap
/// mod 2^bits exactly, so k*alpha stays trustworthy for k far beyond
/// anything double arithmetic could carry.
class TorusAngle {
 public:
  TorusAngle() : bits_(256) {}
  TorusAngle(BigInt numerator, int bits) : num_(std::move(numerator)), bits_(bits) {
    reduce();
  }

  static TorusAngle zero(int bits) { return TorusAngle(BigInt(0), bits); }

  /// Nearest grid point below u (u in [0,1)).
  static TorusAngle from_unit_double(double u, int bits) {
    return TorusAngle(unit_double_to_fixed(u, bits), bits);
  }

  const BigInt& numerator() const { return num_; }
  int bits() const { return bits_; }
  BigInt modulus() const { return BigInt(1) << bits_; }

  TorusAngle operator+(const TorusAngle& o) const {
    check_bits(o);
    return TorusAngle(num_ + o.num_, bits_);
  }
  TorusAngle operator-(const TorusAngle& o) const {
    check_bits(o);
    return TorusAngle(num_ - o.num_, bits_);
  }
  TorusAngle times(const BigInt& k) const { return TorusAngle(num_ * k, bits_); }
  TorusAngle negated() const { return TorusAngle(-num_, bits_); }

  bool operator==(const TorusAngle& o) const {
    return bits_ == o.bits_ && num_ == o.num_;
  }

  /// Value in [0,1), truncated to 53 bits.
  double to_unit_double() const { return fixed_to_unit_double(num_, bits_); }

  /// Signed representative in (-1/2, 1/2].
  double to_signed_double() const {
    BigInt half = BigInt(1) << (bits_ - 1);
    if (num_ > half) return -fixed_to_unit_double(modulus() - num_, bits_);
    return to_unit_double();
  }

  /// Distance to the nearest point of Z (range [0,1/2]) or of (1/2)Z
  /// (range [0,1/4]), the metric of the |.|_{mod Z/2} conditions.
  double dist(Grid g) const { return fixed_to_unit_double(dist_numerator(g), bits_); }

  /// Same distance as an exact numerator over 2^bits.
  BigInt dist_numerator(Grid g) const {
    BigInt period = (g == Grid::Z) ? modulus() : (modulus() >> 1);
    BigInt m = num_ % period;
    BigInt d = period - m;
    return m < d ? m : d;
  }

  std::string to_decimal_string() const { return to_decimal(num_); }

 private:
  void reduce() {
    BigInt m = modulus();
    num_ %= m;
    if (num_ < 0) num_ += m;
  }
  void check_bits(const TorusAngle& o) const {
    if (bits_ != o.bits_)
      throw Error(ErrorCode::Precondition, "mixed fixed-point precisions");
  }

  BigInt num_;
  int bits_;
};

}  // namespace skewlab
