#pragma once

#include <cstdint>
#include <vector>

#include "skewlab/dynamics.hpp"
#include "skewlab/normal_form.hpp"

namespace skewlab {

/// Finitely checkable hypotheses of the construction, per level:
/// eq. (2) return times, eq. (3) non-return for the top constant,
/// eq. (6) half-integer bound, and the n_l |F_{i_l+1}| decay.
struct ConditionReport {
  struct Level {
    int level{0};
    BigInt n;
    int tau_adjust{0};
    double dist_n_alpha{0.0};        // dist_int(n_i alpha)
    double dist_n_atop_half{0.0};    // dist_{Z/2}(n_i a_top)
    double dist_n_alevel_half{0.0};  // dist_{Z/2}(n_i a_i), the level-local surrogate
    double dist_kn_alpha_half{0.0};  // dist_{Z/2}(k_i n_i alpha)
    double sup_f_above{0.0};         // |F_{i+1}| on the verification grid
    double n_times_sup_f{0.0};
    bool eq3_pass{false};
    bool eq6_pass{false};
  };
  std::vector<Level> levels;
  double epsilon{0.05};
  bool eq2_strictly_decreasing{false};
  bool eq3_all_pass{false};
  bool eq6_all_pass{false};
};

ConditionReport check_conditions(const Cocycle& cocycle);

/// Accumulation structure of the partial products D_m ... D_1 in
/// SO(3) = SU(2) mod +/-Id. Greedy packing: a new center opens only at
/// distance > 2*radius from every existing one; points go to the nearest.
struct ClusterReport {
  struct Cluster {
    SU2 center;
    std::uint64_t count{0};
    double max_point_distance{0.0};
  };
  std::vector<Cluster> clusters;
  double radius{0.0};
  std::uint64_t horizon{0};
  double min_separation{0.0};  // over distinct centers; >= 2*radius by construction
};

ClusterReport partial_product_clusters(const std::vector<double>& theta,
                                       const std::vector<double>& phi, std::uint64_t horizon,
                                       double radius);

/// Reproduction of the orbit-of-(0,Id) approximation chain at one landmark
/// iterate, with each substitution error measured independently.
struct ChainErrorReport {
  int level{0};
  BigInt n;
  double delta_exact{0.0};  // residual of the exact telescoping identity
  double delta_h{0.0};      // dist(H_l(n alpha), H_l(0))
  double delta_f{0.0};      // dist of the upper-tail power from A_top^n
  double delta_total{0.0};  // dist(true orbit point, (prod D)* A_top^n (prod D))
  double budget_rhs{0.0};   // delta_exact + 2 delta_h + delta_f + 1e-9
  bool budget_holds{false};
  double lip_h_bound{0.0};       // 4 pi sum |k_j|, j <= l
  double lip_h_times_dist{0.0};  // bound that delta_h is checked against
  double atop_pow_dist_half{0.0};   // dist_{Z/2}(n a_top)
  double atop_pow_so3_id{0.0};      // dist_so3(A_top^n, Id) (quotient also covers -Id)
  bool atop_away_from_pmid{false};  // eq. (3) symptom at epsilon
  double alevel_pow_dist_half{0.0}; // dist_{Z/2}(n a_l): the eq. (6)-protected surrogate
};

ChainErrorReport proof_chain_report(const Cocycle& cocycle, int level);

/// Birkhoff spread across starts: the unique-ergodicity failure symptom.
struct SpreadReport {
  std::vector<std::uint64_t> checkpoints;
  std::vector<std::vector<double>> per_start;  // [start][checkpoint]
  std::vector<double> spread;                  // max - min per checkpoint
  double final_spread{0.0};
};

struct Start {
  TorusAngle x;
  SU2 s;
};

SpreadReport ue_probe(const Cocycle& cocycle, const Observable& obs,
                      const std::vector<Start>& starts, std::uint64_t n,
                      const std::vector<std::uint64_t>& checkpoints, int workers = 1);

/// Orbit coverage of an (M_x base cells) x (fiber cells) net; fiber cells bin
/// the sign-canonicalized quaternion coordinates on a b^3 grid, b = cbrt(M_q).
struct CoverageReport {
  int cells_x{0};
  int cells_fiber{0};  // b^3 after rounding M_q to a cube
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> fraction;  // visited / (cells_x * cells_fiber), nondecreasing
  double final_fraction{0.0};
};

CoverageReport coverage_probe(const Cocycle& cocycle, int cells_x, int cells_q,
                              const TorusAngle& x0, const SU2& s0, std::uint64_t n,
                              std::uint64_t stride,
                              const std::vector<std::uint64_t>& checkpoints);

/// Fiber cell index used by coverage_probe (exposed for tests).
int fiber_cell_of(const SU2& s, int bins_per_axis);

}  // namespace skewlab
