#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "skewlab/su2.hpp"
#include "skewlab/torus.hpp"

namespace skewlab {

/// Resonance schedule: explicit frequencies, 1-based positions into the
/// list of convergent denominators, or a growth rule that picks the
/// smallest convergent denominator >= factor * k^s at each step.
struct Schedule {
  enum class Kind { Explicit, Indices, Growth };
  Kind kind{Kind::Indices};
  std::vector<BigInt> ks;        // Explicit
  std::vector<int> indices;      // Indices (1-based; golden default 9, 18, 36)
  int growth_base_index{9};      // Growth
  double growth_exponent{2.0};   // s_i (validated >= 2)
  double growth_factor{2.0};

  static Schedule default_indices() { return {}; }
};

struct TopMode {
  enum class Kind { Zero, Resonant };
  Kind kind{Kind::Zero};
  double magnitude{0.0};  // |F_top resonant coefficient| when Resonant
};

struct PlanParams {
  RotationSpec alpha;
  int depth{3};
  Schedule schedule{};
  std::vector<double> theta{2.0, 1.2, 0.8};
  std::vector<double> phi{};  // empty = all zeros
  double epsilon{0.05};
  TopMode top_mode{};
  bool fhat_from_landmark{false};  // couple |fhat_i| to 1/n_{i+1}
  int grid_size{4096};
  BigInt dio_scan_limit{1000};
};

/// One resonance level of the truncated normal form. The stored (a, fhat)
/// solve the tan/phase relations against the next resonance gap r_{i+1}:
///   a = k alpha + r_{i+1} cos(theta),  |fhat| = r_{i+1} sin(theta),
///   arg(fhat) = 2 pi phi.
struct NormalFormLevel {
  BigInt k;
  double theta{0.0};
  double phi{0.0};
  TorusAngle a;
  Complex fhat{0.0, 0.0};
  BigInt n;        // landmark iterate k_i^{tau}(k_i - k_{i-1})
  int tau_adjust{0};
  double r_next{0.0};  // dist_mod(k_{i+1} alpha, Z/2) used by the solve
};

struct CocycleSpec {
  RotationSpec alpha;
  int precision_bits{256};
  double epsilon{0.05};
  std::vector<NormalFormLevel> levels;
  TorusAngle a_top;
  TopMode top_mode{};
  BigInt k_virtual;  // schedule-extended next resonance behind r_{N+1}
  int grid_size{4096};

  int depth() const { return static_cast<int>(levels.size()); }
};

class Cocycle;

/// Solve the whole truncated normal form from the plan. Rejects rational
/// alpha (RationalAlpha), schedules violating eq. (6) beyond tau repair
/// (NoValidTau), and infeasible landmark-coupled modes (InfeasibleLevel).
CocycleSpec plan_levels(const PlanParams& params);

Cocycle assemble(const CocycleSpec& spec);

/// Evaluable cocycle A(x) = H_N^*(x+alpha) Top(x) H_N(x), built by backward
/// conjugation so the per-level conjugacy identities hold to roundoff.
/// Immutable after construction; evaluation is safe from any thread.
class Cocycle {
 public:
  explicit Cocycle(CocycleSpec spec);

  const CocycleSpec& spec() const { return spec_; }
  const TorusAngle& alpha() const { return alpha_; }
  const TorusAngle& a_top() const { return spec_.a_top; }
  int depth() const { return spec_.depth(); }

  /// Partial conjugator product H_{lo..hi}(x) = G_hi(x) ... G_lo(x).
  SU2 h_partial(int lo, int hi, const TorusAngle& x) const;

  /// H_i(x) = G_i(x) ... G_1(x); h(0, x) = Id.
  SU2 h(int depth, const TorusAngle& x) const;

  SU2 conjugator(int level, const TorusAngle& x) const;  // G_level(x)

  /// Top map A_top e^{F_top(x)}: constant when top_mode = zero.
  SU2 top_map(const TorusAngle& x) const;

  /// Level-i intermediate map A_i e^{F_i(x)} = H_{i..N}^*(x+alpha) Top(x) H_{i..N}(x);
  /// level N+1 is the top map itself.
  SU2 level_map(int level, const TorusAngle& x) const;

  SU2 eval(const TorusAngle& x) const { return level_map(1, x); }

  /// A_top^n as an exact diagonal power (n * a_top reduced in fixed point).
  SU2 top_power(const BigInt& n) const;

  bool fast_path_available() const { return spec_.top_mode.kind == TopMode::Kind::Zero; }

  /// Iterated product A^{(n)}(x); closed form above the threshold.
  SU2 product_at(const TorusAngle& x, const BigInt& n,
                 std::uint64_t direct_threshold = 1u << 20) const;

  double theta_half_cos(int level) const { return cos_half_[level - 1]; }
  double theta_half_sin(int level) const { return sin_half_[level - 1]; }

 private:
  CocycleSpec spec_;
  TorusAngle alpha_;
  std::vector<double> cos_half_, sin_half_;
};

/// Ordered product of conjugators over levels 1..depth at x (paper's H_i).
SU2 h_eval(const CocycleSpec& spec, int depth, const TorusAngle& x);

/// Fourier/residual measurement of one level of an assembled cocycle.
struct LevelVerifyReport {
  int level{0};
  int grid{0};
  double conjugacy_residual{0.0};   // sup_x |G(x+a) M_i(x) G*(x) - M_{i+1}(x)|_F
  double sup_norm{0.0};             // sampled sup of |F_i|
  double rms_norm{0.0};             // sqrt(mean |F_i|^2); grid-stable
  long long dominant_index{0};      // alias index of the dominant w-mode
  long long expected_alias{0};      // 2 k_i mod grid
  bool index_matches{false};
  double dominant_magnitude{0.0};   // |w-hat(dominant)|
  double planned_magnitude{0.0};    // 2 pi |fhat_stored|
  double planned_mismatch{0.0};     // |w-hat(dominant) - 2 pi i fhat_stored|
  double removal_residual_sup{0.0}; // sup |F_i - dominant mode|
  double removal_residual_rms{0.0};
  double diagonal_mean{0.0};        // mean of the t-component
};

/// Measures F_i(x) = log(A_i^* M_i(x)) on the grid and checks the conjugacy
/// identity. Levels whose doubled frequency exceeds the grid Nyquist limit
/// are identified through their alias index; samples themselves are exact
/// closed-form evaluations. Grid is doubled once if 4 k_i = 0 mod grid
/// (the +/- mode aliases would collide).
LevelVerifyReport verify_level(const Cocycle& cocycle, int level, int grid_size);

struct KamStepResult {
  SU2 new_constant;
  std::vector<Su2Tangent> residual;  // F' on the grid
  double residual_sup{0.0};
  double input_sup{0.0};
  // recovered level data
  long long k{0};
  double theta{0.0};
  double phi{0.0};
  double a_new{0.0};  // argument of the new constant, in turns
  double dominant_ratio{0.0};
};

/// One forward KAM conjugation step: identify the dominant off-diagonal
/// mode of F, recover (theta, phi) by the tan/phase formulas, conjugate by
/// G = B_k D B_k^* on the grid and measure the residual (quadratic smallness
/// is measured, not assumed). Preconditions: sup|F| <= 0.1 and a dominant
/// mode ratio >= 10, else NoDominantMode.
KamStepResult kam_step(const SU2& a_const, const std::vector<Su2Tangent>& f_grid,
                       const TorusAngle& alpha);

CocycleSpec spec_from_json_text(const std::string& text);
std::string spec_to_json_text(const CocycleSpec& spec);

}  // namespace skewlab
