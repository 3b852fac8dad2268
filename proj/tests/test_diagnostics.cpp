#include "doctest.h"

#include <cmath>

#include "skewlab/diagnostics.hpp"
#include "skewlab/rng.hpp"

using namespace skewlab;

namespace {

CocycleSpec default_spec(int precision_bits = 256) {
  PlanParams p;
  p.alpha = RotationSpec::golden(precision_bits);
  return plan_levels(p);
}

CocycleSpec constant_spec() {
  PlanParams p;
  p.alpha = RotationSpec::golden();
  p.depth = 0;
  return plan_levels(p);
}

// Circle-geometry oracle for phi = 0 products: D(c,0) with c the cumulative
// angle; distances in SO(3) have the closed form below.
double circle_dist(double c1, double c2) {
  double d = c1 - c2;
  return 2.0 * std::sqrt(2.0) *
         std::min(std::abs(std::sin(d / 4.0)), std::abs(std::cos(d / 4.0)));
}

}  // namespace

TEST_CASE("check_conditions on the default spec: pinned columns and flags") {
  Cocycle c = assemble(default_spec());
  ConditionReport rep = check_conditions(c);
  REQUIRE(rep.levels.size() == 3);

  // eq (2) column, 256-bit oracle values; strictly decreasing with k_0 = 1
  CHECK(rep.levels[0].dist_n_alpha == doctest::Approx(0.3951216287).epsilon(1e-6));
  CHECK(rep.levels[1].dist_n_alpha == doctest::Approx(0.0133286878).epsilon(1e-6));
  CHECK(rep.levels[2].dist_n_alpha == doctest::Approx(0.0001730403).epsilon(1e-6));
  CHECK(rep.eq2_strictly_decreasing);

  // eq (6) passes at every level with no tau repair
  CHECK(rep.eq6_all_pass);
  for (const auto& l : rep.levels) CHECK(l.tau_adjust == 0);

  // eq (3) with the a_top stand-in: the finite-depth gap leaves only the
  // deepest level above epsilon (see the chain report for the same story)
  CHECK(!rep.levels[0].eq3_pass);
  CHECK(!rep.levels[1].eq3_pass);
  CHECK(rep.levels[2].eq3_pass);
  CHECK(rep.levels[2].dist_n_atop_half == doctest::Approx(0.0528638).epsilon(1e-5));

  // the level-local surrogate clears epsilon everywhere
  for (const auto& l : rep.levels) CHECK(l.dist_n_alevel_half >= rep.epsilon);

  // n_i |F_{i+1}| tail: small above level 1, zero at the top
  CHECK(rep.levels[0].n_times_sup_f == doctest::Approx(33.0 * kTwoPi * 1.7304e-4).epsilon(1e-3));
  CHECK(rep.levels[1].n_times_sup_f < 1e-9);
  CHECK(rep.levels[2].sup_f_above == 0.0);
}

TEST_CASE("condition columns agree at doubled precision") {
  ConditionReport a = check_conditions(assemble(default_spec(256)));
  ConditionReport b = check_conditions(assemble(default_spec(512)));
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    CHECK(a.levels[i].dist_n_alpha ==
          doctest::Approx(b.levels[i].dist_n_alpha).epsilon(1e-12));
    CHECK(a.levels[i].dist_kn_alpha_half ==
          doctest::Approx(b.levels[i].dist_kn_alpha_half).epsilon(1e-12));
    CHECK(a.levels[i].dist_n_atop_half ==
          doctest::Approx(b.levels[i].dist_n_atop_half).epsilon(1e-9));
  }
}

TEST_CASE("clusters: summable angles give one cluster") {
  std::vector<double> theta, phi;
  for (int i = 1; i <= 200; ++i) theta.push_back(std::pow(2.0, std::max(-i, -60)));
  ClusterReport rep = partial_product_clusters(theta, phi, 10000, 0.3);
  CHECK(rep.clusters.size() == 1);
  CHECK(rep.clusters[0].count == 10000);
}

TEST_CASE("clusters: phi = 0 products lie on the one-parameter circle") {
  std::vector<double> theta;
  for (int i = 1; i <= 1000; ++i) theta.push_back(1.0 / (i + 1));
  SU2 prod = SU2::identity();
  double cum = 0.0;
  for (int j = 0; j < 1000; ++j) {
    prod = compose(d_matrix(theta[j], 0.0), prod);
    cum += theta[j];
    CHECK(frobenius_distance(prod, d_matrix(cum, 0.0)) < 1e-12);
  }
}

TEST_CASE("clusters: harmonic angles wrap the circle; geometry oracle agrees") {
  std::vector<double> theta, phi;
  for (int i = 1; i <= 10000; ++i) theta.push_back(1.0 / (i + 1));
  ClusterReport rep = partial_product_clusters(theta, phi, 10000, 0.3);
  CHECK(rep.clusters.size() >= 2);
  CHECK(rep.min_separation >= 0.5);
  std::uint64_t total = 0;
  for (const auto& cl : rep.clusters) {
    total += cl.count;
    CHECK(cl.max_point_distance <= 2.0 * rep.radius + 1e-12);
  }
  CHECK(total == rep.horizon);
  CHECK(rep.min_separation >= 2.0 * rep.radius);

  // independent circle-geometry replication of the greedy packing
  std::vector<double> centers;
  std::vector<std::uint64_t> counts;
  double cum = 0.0;
  for (int j = 1; j <= 10000; ++j) {
    cum += 1.0 / (j + 1);
    double best = 1e300;
    std::size_t bi = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      double d = circle_dist(cum, centers[c]);
      if (d < best) {
        best = d;
        bi = c;
      }
    }
    if (centers.empty() || best > 0.6) {
      centers.push_back(cum);
      counts.push_back(1);
    } else {
      counts[bi] += 1;
    }
  }
  REQUIRE(rep.clusters.size() == centers.size());
  for (std::size_t c = 0; c < centers.size(); ++c) CHECK(rep.clusters[c].count == counts[c]);
}

TEST_CASE("proof chain: flat spec collapses to the diagonal power") {
  PlanParams p;
  p.alpha = RotationSpec::golden();
  p.theta = {0.0, 0.0, 0.0};
  Cocycle c = assemble(plan_levels(p));
  for (int level = 1; level <= 3; ++level) {
    ChainErrorReport rep = proof_chain_report(c, level);
    CHECK(rep.delta_exact < 1e-10);
    CHECK(rep.delta_h < 1e-12);
    CHECK(rep.delta_f < 1e-12);
    CHECK(rep.delta_total < 1e-10);
  }
}

TEST_CASE("proof chain on the default spec: exactness, budget, Lipschitz check") {
  Cocycle c = assemble(default_spec());
  for (int level = 1; level <= 3; ++level) {
    ChainErrorReport rep = proof_chain_report(c, level);
    CHECK(rep.delta_exact <= 1e-10);
    CHECK(rep.budget_holds);
    CHECK(rep.delta_total <= rep.budget_rhs);
    CHECK(rep.delta_h <= rep.lip_h_times_dist * (1.0 + 1e-9) + 1e-12);
    // the level-local constant stays away from +/-Id (eq. (6) protection)
    CHECK(rep.alevel_pow_dist_half >= 0.05);
  }
  // finite-depth a_top stand-in: only the deepest level clears epsilon
  CHECK(!proof_chain_report(c, 1).atop_away_from_pmid);
  CHECK(!proof_chain_report(c, 2).atop_away_from_pmid);
  ChainErrorReport top = proof_chain_report(c, 3);
  CHECK(top.atop_away_from_pmid);
  CHECK(top.atop_pow_dist_half == doctest::Approx(0.0528638).epsilon(1e-5));
}

TEST_CASE("proof chain needs the closed-form path") {
  PlanParams p;
  p.alpha = RotationSpec::golden();
  p.top_mode.kind = TopMode::Kind::Resonant;
  p.top_mode.magnitude = 1e-6;
  Cocycle c = assemble(plan_levels(p));
  CHECK_THROWS_AS(proof_chain_report(c, 3), Error);
}

TEST_CASE("ue_probe: single start has zero spread") {
  Cocycle c = assemble(constant_spec());
  DeterministicRng rng(51);
  std::vector<Start> starts{{rng.torus_angle(256), rng.haar_su2()}};
  SpreadReport rep = ue_probe(c, Observable{}, starts, 1000, {1000});
  CHECK(rep.final_spread == 0.0);
}

TEST_CASE("ue_probe: constant cocycle keeps the initial |S11|^2 spread exactly") {
  Cocycle c = assemble(constant_spec());
  DeterministicRng rng(52);
  SU2 j_mat{Complex(0.0, 0.0), Complex(1.0, 0.0)};  // |S11|^2 = 0
  std::vector<Start> starts{{rng.torus_angle(256), SU2::identity()},
                            {rng.torus_angle(256), j_mat}};
  SpreadReport rep = ue_probe(c, Observable{}, starts, 20000, {16, 1024, 20000});
  for (double s : rep.spread) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ue_probe is bitwise reproducible across worker counts") {
  Cocycle c = assemble(default_spec());
  DeterministicRng rng(53);
  std::vector<Start> starts;
  for (int i = 0; i < 6; ++i) starts.push_back({rng.torus_angle(256), rng.haar_su2()});
  SpreadReport one = ue_probe(c, Observable{}, starts, 5000, {512, 5000}, 1);
  SpreadReport four = ue_probe(c, Observable{}, starts, 5000, {512, 5000}, 4);
  REQUIRE(one.per_start.size() == four.per_start.size());
  for (std::size_t i = 0; i < one.per_start.size(); ++i)
    for (std::size_t k = 0; k < one.per_start[i].size(); ++k)
      CHECK(one.per_start[i][k] == four.per_start[i][k]);
}

TEST_CASE("coverage: one cell at n = 0, monotone fractions, canonical fiber cells") {
  Cocycle c = assemble(default_spec());
  TorusAngle zero = TorusAngle::zero(256);
  CoverageReport rep0 = coverage_probe(c, 16, 64, zero, SU2::identity(), 0, 1, {});
  CHECK(rep0.final_fraction == doctest::Approx(1.0 / (16.0 * 64.0)));

  CoverageReport rep = coverage_probe(c, 16, 64, zero, SU2::identity(), 20000, 1,
                                      {16, 256, 4096, 20000});
  for (std::size_t i = 1; i < rep.fraction.size(); ++i)
    CHECK(rep.fraction[i] >= rep.fraction[i - 1]);
  CHECK(rep.final_fraction <= 1.0);

  DeterministicRng rng(54);
  for (int t = 0; t < 100; ++t) {
    SU2 u = rng.haar_su2();
    CHECK(fiber_cell_of(u, 4) == fiber_cell_of(u.negated(), 4));
    int cell = fiber_cell_of(u, 4);
    CHECK(cell >= 0);
    CHECK(cell < 64);
  }
}

TEST_CASE("coverage: the synthesized cocycle spreads beyond the constant one") {
  Cocycle synth = assemble(default_spec());
  Cocycle constant = assemble(constant_spec());
  TorusAngle zero = TorusAngle::zero(256);
  const std::uint64_t n = 20000;
  CoverageReport a = coverage_probe(synth, 16, 64, zero, SU2::identity(), n, 1, {n});
  CoverageReport b = coverage_probe(constant, 16, 64, zero, SU2::identity(), n, 1, {n});
  CHECK(b.final_fraction < 0.5);  // confined to a coset torus
  CHECK(a.final_fraction >= 2.0 * b.final_fraction);
}
