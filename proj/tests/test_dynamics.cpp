#include "doctest.h"

#include <cmath>

#include "skewlab/dynamics.hpp"
#include "skewlab/rng.hpp"

using namespace skewlab;

namespace {

CocycleSpec default_spec() {
  PlanParams p;
  p.alpha = RotationSpec::golden();
  return plan_levels(p);
}

CocycleSpec constant_spec() {
  PlanParams p;
  p.alpha = RotationSpec::golden();
  p.depth = 0;
  return plan_levels(p);
}

}  // namespace

TEST_CASE("iterate_orbit: n = 0 stores only the start") {
  Cocycle c = assemble(constant_spec());
  DeterministicRng rng(41);
  TorusAngle x0 = rng.torus_angle(256);
  SU2 s0 = rng.haar_su2();
  OrbitSample sample = iterate_orbit(c, x0, s0, 0, 1);
  REQUIRE(sample.points.size() == 1);
  CHECK(sample.points[0].x == x0);
  CHECK(frobenius_distance(sample.points[0].s, s0) < 1e-15);
}

TEST_CASE("constant diagonal cocycle matches the exact diagonal power") {
  Cocycle c = assemble(constant_spec());
  DeterministicRng rng(42);
  SU2 s0 = rng.haar_su2();
  TorusAngle x0 = rng.torus_angle(256);
  const std::uint64_t n = 100000;
  OrbitSample sample = iterate_orbit(c, x0, s0, n, n);
  REQUIRE(sample.points.size() == 2);
  SU2 closed = compose(c.top_power(BigInt(n)), s0);
  CHECK(frobenius_distance(sample.points[1].s, closed) < 1e-10);
}

TEST_CASE("base coordinate advances bit-exactly in fixed point") {
  Cocycle c = assemble(default_spec());
  DeterministicRng rng(43);
  TorusAngle x0 = rng.torus_angle(256);
  const std::uint64_t n = 4096;
  OrbitSample sample = iterate_orbit(c, x0, SU2::identity(), n, 1);
  TorusAngle expected = x0 + angle_times_int(BigInt(n), c.alpha()).value;
  CHECK(sample.points.back().x == expected);
  // every stored step, not just the last
  TorusAngle mid = x0 + angle_times_int(BigInt(1234), c.alpha()).value;
  CHECK(sample.points[1234].x == mid);
}

TEST_CASE("unitarity drift stays below 1e-10 over 1e5 steps") {
  Cocycle c = assemble(default_spec());
  DeterministicRng rng(44);
  OrbitSample sample = iterate_orbit(c, rng.torus_angle(256), rng.haar_su2(), 100000, 100000);
  CHECK(std::abs(sample.points.back().s.norm2() - 1.0) < 1e-10);
}

TEST_CASE("product_at: single step and the cocycle identity") {
  Cocycle c = assemble(default_spec());
  DeterministicRng rng(45);
  TorusAngle x = rng.torus_angle(256);
  CHECK(frobenius_distance(c.product_at(x, BigInt(1)), c.eval(x)) < 1e-15);

  for (int trial = 0; trial < 10; ++trial) {
    std::uint64_t m = 1 + static_cast<std::uint64_t>(rng.unit() * 1000);
    std::uint64_t n = 1 + static_cast<std::uint64_t>(rng.unit() * 1000);
    TorusAngle xn = x + angle_times_int(BigInt(n), c.alpha()).value;
    SU2 lhs = c.product_at(x, BigInt(m + n));
    SU2 rhs = compose(c.product_at(xn, BigInt(m)), c.product_at(x, BigInt(n)));
    CHECK(frobenius_distance(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("fast path agrees with direct composition at n = 10^4") {
  Cocycle c = assemble(default_spec());
  DeterministicRng rng(46);
  TorusAngle x = rng.torus_angle(256);
  const BigInt n(10000);
  SU2 direct = c.product_at(x, n, 1u << 20);
  SU2 fast = c.product_at(x, n, 1);  // threshold 1 forces the closed form
  CHECK(frobenius_distance(direct, fast) < 1e-9);
}

TEST_CASE("fast path reaches landmark iterates far beyond any loop budget") {
  Cocycle c = assemble(default_spec());
  TorusAngle zero = TorusAngle::zero(256);
  BigInt huge = BigInt("1000000000000000000000000");  // 1e24
  SU2 r = c.product_at(zero, huge, 1u << 20);
  CHECK(std::abs(r.norm2() - 1.0) < 1e-12);
}

TEST_CASE("non-constant top residual blocks the closed form above the threshold") {
  PlanParams p;
  p.alpha = RotationSpec::golden();
  p.top_mode.kind = TopMode::Kind::Resonant;
  p.top_mode.magnitude = 1e-6;
  Cocycle c = assemble(plan_levels(p));
  CHECK(!c.fast_path_available());
  TorusAngle zero = TorusAngle::zero(256);
  CHECK_THROWS_AS(c.product_at(zero, BigInt(1) << 40), Error);
  try {
    c.product_at(zero, BigInt(1) << 40);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FastPathUnavailable);
  }
  // below the threshold the direct path still works
  SU2 small = c.product_at(zero, BigInt(64));
  CHECK(std::abs(small.norm2() - 1.0) < 1e-12);
}

TEST_CASE("birkhoff: invariant observable averages to its constant value") {
  Cocycle c = assemble(constant_spec());
  Observable obs;  // abs11sq
  DeterministicRng rng(47);
  SU2 s0 = rng.haar_su2();
  double expected = std::norm(s0.z);
  AverageSeries series = birkhoff(c, obs, rng.torus_angle(256), s0, 10000, {1, 16, 1024, 10000});
  REQUIRE(series.averages.size() == 4);
  for (auto v : series.averages) {
    CHECK(v.real() == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
}

TEST_CASE("birkhoff: golden harmonic average matches the geometric-sum oracle") {
  Cocycle c = assemble(constant_spec());
  Observable obs;
  obs.kind = Observable::Kind::XHarmonic;
  obs.m = 1;
  const std::uint64_t n = 100000;
  TorusAngle x0 = TorusAngle::zero(256);
  AverageSeries series = birkhoff(c, obs, x0, SU2::identity(), n, {n});
  double seen = std::abs(series.averages.back());
  CHECK(seen <= 1e-3);
  // closed-form |sum_{j<n} e^{2 pi i j alpha}| / n
  double alpha = c.alpha().to_unit_double();
  double oracle = std::abs(std::sin(kPi * n * alpha) / std::sin(kPi * alpha)) / double(n);
  CHECK(seen == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("fiber of the orbit equals the cocycle product") {
  Cocycle c = assemble(default_spec());
  DeterministicRng rng(48);
  TorusAngle x0 = rng.torus_angle(256);
  SU2 s0 = rng.haar_su2();
  const std::uint64_t n = 10000;
  OrbitSample sample = iterate_orbit(c, x0, s0, n, n);
  SU2 via_product = compose(c.product_at(x0, BigInt(n)), s0);
  CHECK(frobenius_distance(sample.points.back().s, via_product) < 1e-9);
}

TEST_CASE("default checkpoints are powers of two plus the landmarks") {
  CocycleSpec spec = default_spec();
  auto cps = default_checkpoints(spec, 1u << 22);
  for (std::uint64_t v : {std::uint64_t(1), std::uint64_t(1024), std::uint64_t(1) << 22})
    CHECK(std::find(cps.begin(), cps.end(), v) != cps.end());
  for (std::uint64_t v : {std::uint64_t(33), std::uint64_t(2550)})
    CHECK(std::find(cps.begin(), cps.end(), v) != cps.end());
  CHECK(std::is_sorted(cps.begin(), cps.end()));
}

TEST_CASE("observable text forms round-trip") {
  for (const char* t : {"abs11sq", "trace_real", "x_harmonic(3)", "product(2)"}) {
    CHECK(Observable::parse(t).to_text() == t);
  }
  CHECK_THROWS_AS(Observable::parse("nope"), Error);
}
