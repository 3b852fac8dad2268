#pragma once

#include <cstdint>
#include <vector>

#include "skewlab/normal_form.hpp"

namespace skewlab {

/// Test functions for the ergodicity probes; bounded by 1 in absolute value.
struct Observable {
  enum class Kind { Abs11Sq, TraceReal, XHarmonic, Product };
  Kind kind{Kind::Abs11Sq};
  int m{1};  // harmonic index for XHarmonic / Product

  Complex eval(const TorusAngle& x, const SU2& s) const;
  bool is_real() const { return kind == Kind::Abs11Sq || kind == Kind::TraceReal; }
  static Observable parse(const std::string& text);
  std::string to_text() const;
};

struct OrbitSample {
  struct Point {
    TorusAngle x;
    SU2 s;
  };
  std::vector<Point> points;  // every stride-th point, starting at (x0, S0)
  std::uint64_t stride{1};
};

/// Skew-product orbit (x, S) -> (x + alpha, A(x) S); base coordinate advanced
/// in exact fixed point, fiber renormalized on the algebra cadence.
OrbitSample iterate_orbit(const Cocycle& cocycle, const TorusAngle& x0, const SU2& s0,
                          std::uint64_t n, std::uint64_t stride);

struct AverageSeries {
  std::vector<std::uint64_t> checkpoints;
  std::vector<Complex> averages;  // (1/m) sum_{j<m} obs(orbit_j) at each checkpoint
};

/// Running Birkhoff averages with compensated summation, single pass.
AverageSeries birkhoff(const Cocycle& cocycle, const Observable& obs, const TorusAngle& x0,
                       const SU2& s0, std::uint64_t n,
                       const std::vector<std::uint64_t>& checkpoints);

/// Powers of two up to n, merged with the landmark iterates of the spec.
std::vector<std::uint64_t> default_checkpoints(const CocycleSpec& spec, std::uint64_t n);

void export_orbit_csv(const OrbitSample& sample, const std::string& path);
void export_series_csv(const AverageSeries& series, const std::string& path);

}  // namespace skewlab
