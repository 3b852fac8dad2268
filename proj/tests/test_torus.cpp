#include "doctest.h"

#include <cmath>

#include "skewlab/rng.hpp"
#include "skewlab/torus.hpp"

using namespace skewlab;

namespace {

// Recurrence oracle p_n = a_n p_{n-1} + p_{n-2} for a given quotient list.
std::vector<Convergent> recurrence_oracle(const std::vector<long long>& a) {
  std::vector<Convergent> out;
  BigInt p0(1), q0(0), p1, q1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == 0) {
      p1 = a[0];
      q1 = 1;
    } else {
      BigInt p2 = a[i] * p1 + p0, q2 = a[i] * q1 + q0;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    out.push_back({p1, q1});
  }
  return out;
}

}  // namespace

TEST_CASE("golden-mean convergents match the recurrence oracle") {
  auto convs = cf_convergents(RotationSpec::golden(), 6);
  auto oracle = recurrence_oracle({0, 1, 1, 1, 1, 1});
  REQUIRE(convs.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(convs[i].p == oracle[i].p);
    CHECK(convs[i].q == oracle[i].q);
  }
  // (0/1, 1/1, 1/2, 2/3, 3/5, 5/8)
  CHECK(convs[5].p == 5);
  CHECK(convs[5].q == 8);
  // q nondecreasing, strictly increasing beyond the 1,1 head
  for (std::size_t i = 1; i < convs.size(); ++i) {
    CHECK(convs[i].q >= convs[i - 1].q);
    if (i >= 2) CHECK(convs[i].q > convs[i - 1].q);
  }
}

TEST_CASE("rational 7/16 terminates at the exact value, Euclid oracle") {
  auto spec = RotationSpec::parse("rational:7/16");
  auto convs = cf_convergents(spec, 10);
  // 16/7: [0;2,3,2]
  REQUIRE(convs.size() == 4);
  CHECK(convs.back().p == 7);
  CHECK(convs.back().q == 16);
  auto oracle = recurrence_oracle({0, 2, 3, 2});
  for (std::size_t i = 0; i < convs.size(); ++i) {
    CHECK(convs[i].p == oracle[i].p);
    CHECK(convs[i].q == oracle[i].q);
  }
}

TEST_CASE("n = 0 yields no convergents") {
  CHECK(cf_convergents(RotationSpec::golden(), 0).empty());
}

TEST_CASE("angle_times_int: zero, exact rational, pinned golden value") {
  auto golden = RotationSpec::golden();
  auto z = angle_times_int(BigInt(0), golden);
  CHECK(z.value.numerator() == 0);

  auto third = RotationSpec::parse("rational:1/3");
  auto t = angle_times_int(BigInt(1), third);
  CHECK(t.value == realize(third));

  auto v = angle_times_int(BigInt(8), golden);
  CHECK(v.value.dist(Grid::Z) == doctest::Approx(0.05572809).epsilon(1e-7));
  CHECK(v.error_bound <= 1e-70);  // 8 ulps at 256 bits
}

TEST_CASE("angle_times_int guards the precision budget") {
  auto golden = RotationSpec::golden();
  BigInt huge = BigInt(1) << 200;
  CHECK_THROWS_AS(angle_times_int(huge, golden), Error);
  try {
    angle_times_int(huge, golden);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionOverflow);
  }
}

TEST_CASE("dist to Z and to the half-integer lattice") {
  const int bits = 256;
  auto angle = [&](double u) { return TorusAngle::from_unit_double(u, bits); };
  CHECK(angle(0.5).dist(Grid::ZHalf) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(angle(0.74).dist(Grid::ZHalf) == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(angle(0.2).dist(Grid::Z) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(angle(0.26).dist(Grid::ZHalf) == doctest::Approx(0.24).epsilon(1e-12));
  // ranges
  DeterministicRng rng(21);
  for (int i = 0; i < 200; ++i) {
    TorusAngle x = rng.torus_angle(bits);
    CHECK(x.dist(Grid::Z) <= 0.5);
    CHECK(x.dist(Grid::ZHalf) <= 0.25);
  }
}

TEST_CASE("convergent property: dist(q_n alpha) < 1/q_{n+1}, exact in fixed point") {
  auto golden = RotationSpec::golden();
  TorusAngle alpha = realize(golden);
  auto convs = cf_convergents(golden, 42);
  REQUIRE(convs.size() >= 42);
  const BigInt modulus = alpha.modulus();
  bool prev_positive = false;
  for (int i = 0; i + 1 < 41; ++i) {
    const BigInt& q = convs[i].q;
    const BigInt& q1 = convs[i + 1].q;
    TorusAngle qa = alpha.times(q);
    BigInt d = qa.dist_numerator(Grid::Z);
    // certified strict comparison: realization error is below q ulps
    CHECK((d + q) * q1 < modulus);
    // alternation of q_n alpha - p_n
    bool positive = qa.numerator() < (modulus >> 1);
    if (i > 0) CHECK(positive != prev_positive);
    prev_positive = positive;
  }
}

TEST_CASE("realization is deterministic and consistent across precisions") {
  auto a1 = realize(RotationSpec::golden(256));
  auto a2 = realize(RotationSpec::golden(256));
  CHECK(a1.numerator() == a2.numerator());
  auto a512 = realize(RotationSpec::golden(512));
  BigInt down = a512.numerator() >> 256;
  CHECK(down - a1.numerator() >= -1);
  CHECK(down - a1.numerator() <= 1);
}

TEST_CASE("error bound of angle_times_int dominates the 4P-bit oracle") {
  auto spec256 = RotationSpec::golden(256);
  auto spec1024 = RotationSpec::golden(1024);
  TorusAngle a256 = realize(spec256);
  TorusAngle a1024 = realize(spec1024);
  DeterministicRng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    BigInt k = BigInt(1) + BigInt(rng.torus_angle(40).numerator());
    auto coarse = angle_times_int(k, a256);
    TorusAngle fine = a1024.times(k);
    // compare at 256 bits
    BigInt fine_down = fine.numerator() >> (1024 - 256);
    BigInt diff = fine_down - coarse.value.numerator();
    if (diff < 0) diff = -diff;
    BigInt wrap = (BigInt(1) << 256) - diff;
    if (wrap < diff) diff = wrap;
    double true_err = fixed_to_unit_double(diff, 256) + std::ldexp(1.0, -250);
    CHECK(true_err <= coarse.error_bound + 1e-60);
  }
}

TEST_CASE("diophantine scan of the golden mean, exhaustive oracle") {
  auto est = diophantine_scan(RotationSpec::golden(), BigInt(1000));
  CHECK(est.tau == doctest::Approx(1.0));
  CHECK(est.gamma >= 0.38);
  CHECK(est.gamma == doctest::Approx(0.3819660113).epsilon(1e-8));
  CHECK(est.worst_k == 1);  // a Fibonacci number
  // independent re-verification of the certified bound
  TorusAngle alpha = realize(RotationSpec::golden());
  for (int k = 1; k <= 1000; ++k) {
    double d = alpha.times(BigInt(k)).dist(Grid::Z);
    CHECK(d >= est.gamma * std::pow(double(k), -est.tau) - 1e-12);
  }
  // records are the best-approximation denominators: Fibonacci numbers
  std::vector<long long> fib{1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987};
  REQUIRE(est.records.size() == fib.size());
  for (std::size_t i = 0; i < fib.size(); ++i) CHECK(est.records[i].first == fib[i]);
}

TEST_CASE("rational alpha is rejected by the scan") {
  auto spec = RotationSpec::parse("rational:3/7");
  CHECK_THROWS_AS(diophantine_scan(spec, BigInt(100)), Error);
  try {
    diophantine_scan(spec, BigInt(100));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RationalAlpha);
    CHECK(std::string(e.what()).find("k = 7") != std::string::npos);
  }
}

TEST_CASE("near-Liouville truncation has tau estimate above 2") {
  auto spec = RotationSpec::parse("cf:[0;1,10,100,10000]");
  auto est = diophantine_scan(spec, BigInt(10000));
  CHECK(est.tau_raw > 2.0);
  CHECK(est.tau_raw == doctest::Approx(2.585).epsilon(0.01));
}

TEST_CASE("rotation spec text forms round-trip") {
  for (const char* text : {"quadratic:(-1+1*sqrt(5))/2", "rational:7/16", "decimal:0.1234",
                           "cf:[0;1,1,1,...]", "cf:[0;2,3,2]"}) {
    auto spec = RotationSpec::parse(text);
    CHECK(spec.to_text() == text);
  }
  // golden via cf equals golden via quadratic to one ulp
  auto via_cf = realize(RotationSpec::parse("cf:[0;1,1,1,...]"));
  auto via_quad = realize(RotationSpec::golden());
  BigInt diff = via_cf.numerator() - via_quad.numerator();
  if (diff < 0) diff = -diff;
  CHECK(diff <= 1);
}

TEST_CASE("insufficient precision is reported, not guessed") {
  auto low = RotationSpec::golden(64);
  CHECK_THROWS_AS(cf_convergents(low, 80), Error);
  try {
    cf_convergents(low, 80);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientPrecision);
  }
}
