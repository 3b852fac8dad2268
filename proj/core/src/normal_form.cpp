#include "skewlab/normal_form.hpp"

#include <algorithm>
#include <cmath>

#include "skewlab/fft.hpp"

namespace skewlab {

namespace {

double wrap_signed(double x) {
  double y = x - std::floor(x);
  return y > 0.5 ? y - 1.0 : y;
}

// Smallest convergent denominator strictly above `floor_value`.
BigInt next_convergent_above(const RotationSpec& alpha, const BigInt& floor_value) {
  for (int n = 8;; n *= 2) {
    auto convs = cf_convergents(alpha, n);
    for (const auto& c : convs)
      if (c.q > floor_value) return c.q;
    if (n > 4096)
      throw Error(ErrorCode::InsufficientPrecision,
                  "no convergent denominator above " + floor_value.str());
  }
}

struct ResolvedSchedule {
  std::vector<BigInt> ks;
  BigInt k_virtual;
};

ResolvedSchedule resolve_schedule(const PlanParams& p) {
  ResolvedSchedule r;
  switch (p.schedule.kind) {
    case Schedule::Kind::Explicit: {
      r.ks = p.schedule.ks;
      if (static_cast<int>(r.ks.size()) < p.depth)
        throw Error(ErrorCode::ConfigInvalid, "schedule shorter than depth");
      r.ks.resize(p.depth);
      if (p.depth == 0) {
        r.k_virtual = next_convergent_above(p.alpha, BigInt(1));
      } else {
        BigInt target = 2 * r.ks.back() * r.ks.back();
        r.k_virtual = next_convergent_above(p.alpha, target - 1);
      }
      break;
    }
    case Schedule::Kind::Indices: {
      std::vector<int> idx = p.schedule.indices;
      if (idx.empty()) idx = {9, 18, 36};
      if (static_cast<int>(idx.size()) < p.depth)
        throw Error(ErrorCode::ConfigInvalid, "schedule indices shorter than depth");
      idx.resize(p.depth);
      int virt = p.depth == 0 ? 2 : 2 * idx.back();
      auto convs = cf_convergents(p.alpha, std::max(virt, 2));
      if (static_cast<int>(convs.size()) < virt)
        throw Error(ErrorCode::ConfigInvalid,
                    "alpha has only " + std::to_string(convs.size()) +
                        " convergents; schedule needs " + std::to_string(virt));
      for (int i : idx) {
        if (i < 1 || i > static_cast<int>(convs.size()))
          throw Error(ErrorCode::ConfigInvalid, "schedule index out of range");
        r.ks.push_back(convs[i - 1].q);
      }
      r.k_virtual = convs[virt - 1].q;
      break;
    }
    case Schedule::Kind::Growth: {
      auto convs = cf_convergents(p.alpha, std::max(p.schedule.growth_base_index, 2));
      if (static_cast<int>(convs.size()) < p.schedule.growth_base_index)
        throw Error(ErrorCode::ConfigInvalid, "growth base index beyond last convergent");
      BigInt k = convs[p.schedule.growth_base_index - 1].q;
      for (int i = 0; i <= p.depth; ++i) {
        if (i < p.depth) r.ks.push_back(k);
        if (i == p.depth) {
          r.k_virtual = k;
          break;
        }
        double target = std::log(p.schedule.growth_factor) +
                        p.schedule.growth_exponent * std::log(k.convert_to<double>());
        BigInt t;
        if (target < 62.0 * std::log(2.0)) {
          t = BigInt(static_cast<unsigned long long>(std::ceil(std::exp(target))));
        } else {
          // fall back to an integer-exponent overshoot; fine for a lower bound
          t = pow_bigint(k, static_cast<unsigned>(std::ceil(p.schedule.growth_exponent)));
          t *= BigInt(static_cast<long long>(std::ceil(p.schedule.growth_factor)));
        }
        k = next_convergent_above(p.alpha, t - 1);
      }
      break;
    }
  }
  for (std::size_t i = 1; i < r.ks.size(); ++i)
    if (r.ks[i] <= r.ks[i - 1] * r.ks[i - 1])
      throw Error(ErrorCode::ConfigInvalid,
                  "schedule must grow at least quadratically: k[" + std::to_string(i + 1) +
                      "] <= k[" + std::to_string(i) + "]^2");
  if (!r.ks.empty() && r.k_virtual <= r.ks.back())
    throw Error(ErrorCode::ConfigInvalid, "virtual resonance not above the schedule");
  return r;
}

TorusAngle offset_by(const TorusAngle& base, double delta) {
  return TorusAngle(base.numerator() + unit_double_to_fixed(delta, base.bits()), base.bits());
}

}  // namespace

CocycleSpec plan_levels(const PlanParams& params) {
  if (params.depth < 0) throw Error(ErrorCode::Precondition, "depth >= 0 required");
  if (static_cast<int>(params.theta.size()) < params.depth)
    throw Error(ErrorCode::ConfigInvalid, "theta list shorter than depth");
  std::vector<double> phi = params.phi;
  if (phi.empty()) phi.assign(params.depth, 0.0);
  if (static_cast<int>(phi.size()) < params.depth)
    throw Error(ErrorCode::ConfigInvalid, "phi list shorter than depth");
  if (params.epsilon <= 0.0) throw Error(ErrorCode::ConfigInvalid, "epsilon must be positive");
  if (params.schedule.kind == Schedule::Kind::Growth && params.schedule.growth_exponent < 2.0)
    throw Error(ErrorCode::ConfigInvalid, "growth exponent s_i >= 2 required");

  // Diophantine gate; also supplies the tau budget for eq. (6) repairs.
  DiophantineEstimate dio = diophantine_scan(params.alpha, params.dio_scan_limit);
  int tau_budget = static_cast<int>(std::ceil(dio.tau)) - 1;

  TorusAngle alpha = realize(params.alpha);
  const int N = params.depth;
  ResolvedSchedule sched = resolve_schedule(params);

  CocycleSpec spec;
  spec.alpha = params.alpha;
  spec.precision_bits = alpha.bits();
  spec.epsilon = params.epsilon;
  spec.top_mode = params.top_mode;
  spec.k_virtual = sched.k_virtual;
  spec.grid_size = params.grid_size;

  // Landmark iterates first (tau repair needs them before the solve).
  std::vector<BigInt> n_base(N), n_final(N);
  std::vector<int> tau_sel(N, 0);
  BigInt k_prev(1);  // k_0: the trivial first convergent denominator
  for (int i = 0; i < N; ++i) {
    n_base[i] = sched.ks[i] - k_prev;
    k_prev = sched.ks[i];
    BigInt n = n_base[i];
    int tau = 0;
    while (true) {
      auto kn = angle_times_int(sched.ks[i] * n, alpha);
      if (kn.value.dist(Grid::ZHalf) >= params.epsilon) break;
      ++tau;
      if (tau > tau_budget)
        throw Error(ErrorCode::NoValidTau,
                    "level " + std::to_string(i + 1) + ": no tau <= " +
                        std::to_string(tau_budget) + " restores the half-integer bound " +
                        "(eq-margin below epsilon = " + std::to_string(params.epsilon) + ")");
      n = n_base[i] * pow_bigint(sched.ks[i], static_cast<unsigned>(tau));
    }
    n_final[i] = n;
    tau_sel[i] = tau;
  }

  // Per-level solve against the next resonance gap.
  for (int i = 0; i < N; ++i) {
    NormalFormLevel lvl;
    lvl.k = sched.ks[i];
    lvl.n = n_final[i];
    lvl.tau_adjust = tau_sel[i];
    lvl.phi = phi[i];

    BigInt k_next = (i + 1 < N) ? sched.ks[i + 1] : sched.k_virtual;
    double r_next;
    if (i + 1 == N && params.top_mode.kind == TopMode::Kind::Resonant) {
      r_next = params.top_mode.magnitude;
    } else {
      r_next = angle_times_int(k_next, alpha).value.dist(Grid::ZHalf);
    }
    lvl.r_next = r_next;

    double theta = params.theta[i];
    if (params.fhat_from_landmark && i + 1 < N) {
      double target = 1.0 / n_final[i + 1].convert_to<double>();
      if (target > r_next)
        throw Error(ErrorCode::InfeasibleLevel,
                    "level " + std::to_string(i + 1) + ": |fhat| = 1/n_{i+1} = " +
                        std::to_string(target) + " exceeds the resonance gap " +
                        std::to_string(r_next));
      theta = std::asin(target / r_next);
    }
    lvl.theta = theta;

    TorusAngle ka = alpha.times(lvl.k);
    lvl.a = offset_by(ka, r_next * std::cos(theta));
    lvl.fhat = std::polar(r_next * std::sin(theta), kTwoPi * lvl.phi);
    spec.levels.push_back(std::move(lvl));
  }

  // Top constant: the deepest diagonal argument continued by the virtual gap.
  BigInt k_last = N > 0 ? sched.ks[N - 1] : BigInt(1);
  double r_top = (params.top_mode.kind == TopMode::Kind::Resonant)
                     ? params.top_mode.magnitude
                     : angle_times_int(sched.k_virtual, alpha).value.dist(Grid::ZHalf);
  spec.a_top = offset_by(alpha.times(k_last), r_top);
  return spec;
}

Cocycle assemble(const CocycleSpec& spec) { return Cocycle(spec); }

Cocycle::Cocycle(CocycleSpec spec) : spec_(std::move(spec)), alpha_(realize(spec_.alpha)) {
  for (const auto& lvl : spec_.levels) {
    cos_half_.push_back(std::cos(lvl.theta / 2.0));
    sin_half_.push_back(std::sin(lvl.theta / 2.0));
  }
}

SU2 Cocycle::conjugator(int level, const TorusAngle& x) const {
  const auto& lvl = spec_.levels[level - 1];
  double u = x.times(lvl.k).to_unit_double();
  return {Complex(cos_half_[level - 1], 0.0),
          std::polar(sin_half_[level - 1], kTwoPi * (lvl.phi + 2.0 * u))};
}

SU2 Cocycle::h_partial(int lo, int hi, const TorusAngle& x) const {
  SU2 acc = SU2::identity();
  for (int j = lo; j <= hi; ++j) acc = compose(conjugator(j, x), acc);
  return acc;
}

SU2 Cocycle::h(int depth, const TorusAngle& x) const { return h_partial(1, depth, x); }

SU2 Cocycle::top_map(const TorusAngle& x) const {
  SU2 a_top{std::polar(1.0, kTwoPi * spec_.a_top.to_unit_double()), Complex(0.0, 0.0)};
  if (spec_.top_mode.kind == TopMode::Kind::Zero) return a_top;
  double u = x.times(spec_.k_virtual).to_unit_double();
  Complex coeff = std::polar(kTwoPi * spec_.top_mode.magnitude, kTwoPi * 2.0 * u + kPi / 2.0);
  return compose(a_top, exp_su2({0.0, coeff}));
}

SU2 Cocycle::level_map(int level, const TorusAngle& x) const {
  const int N = depth();
  if (level == N + 1) return top_map(x);
  SU2 hx = h_partial(level, N, x);
  SU2 hxa = h_partial(level, N, x + alpha_);
  return compose(hxa.adjoint(), compose(top_map(x), hx));
}

SU2 Cocycle::top_power(const BigInt& n) const {
  TorusAngle na = spec_.a_top.times(n);
  return {std::polar(1.0, kTwoPi * na.to_unit_double()), Complex(0.0, 0.0)};
}

SU2 Cocycle::product_at(const TorusAngle& x, const BigInt& n,
                        std::uint64_t direct_threshold) const {
  if (n < 0) throw Error(ErrorCode::Precondition, "product_at: n >= 0 required");
  if (n == 0) return SU2::identity();
  if (n <= BigInt(direct_threshold)) {
    std::uint64_t steps = n.convert_to<std::uint64_t>();
    SU2 s = SU2::identity();
    TorusAngle xi = x;
    for (std::uint64_t j = 0; j < steps; ++j) {
      s = compose(eval(xi), s);
      xi = xi + alpha_;
      if ((j + 1) % kRenormCadence == 0) s = s.renormalized();
    }
    return s;
  }
  if (!fast_path_available())
    throw Error(ErrorCode::FastPathUnavailable,
                "top residual is non-constant; direct path limited to n <= " +
                    std::to_string(direct_threshold));
  TorusAngle x_n = x + angle_times_int(n, alpha_).value;
  SU2 h0 = h(depth(), x);
  SU2 hn = h(depth(), x_n);
  return compose(hn.adjoint(), compose(top_power(n), h0));
}

SU2 h_eval(const CocycleSpec& spec, int depth, const TorusAngle& x) {
  if (depth < 0 || depth > spec.depth())
    throw Error(ErrorCode::Precondition, "h_eval: depth out of range");
  SU2 acc = SU2::identity();
  for (int j = 1; j <= depth; ++j) {
    const auto& lvl = spec.levels[j - 1];
    acc = compose(conjugator_eval(lvl.k, lvl.theta, lvl.phi, x), acc);
  }
  return acc;
}

LevelVerifyReport verify_level(const Cocycle& cocycle, int level, int grid_size) {
  const auto& spec = cocycle.spec();
  if (level < 1 || level > spec.depth())
    throw Error(ErrorCode::Precondition, "verify_level: level out of range");
  const auto& lvl = spec.levels[level - 1];

  int grid = grid_size;
  if ((4 * lvl.k) % grid == 0) grid *= 2;  // keep +/- mode aliases distinct

  const int bits = spec.precision_bits;
  int log2g = 0;
  while ((1 << log2g) < grid) ++log2g;
  if ((1 << log2g) != grid)
    throw Error(ErrorCode::Precondition, "grid size must be a power of two");

  LevelVerifyReport rep;
  rep.level = level;
  rep.grid = grid;

  SU2 a_i{std::polar(1.0, kTwoPi * lvl.a.to_unit_double()), Complex(0.0, 0.0)};
  std::vector<Complex> w(grid), t(grid);
  double sup = 0.0, sumsq = 0.0, conj_res = 0.0, removal_sup = 0.0;

  std::vector<Su2Tangent> f(grid);
  for (int j = 0; j < grid; ++j) {
    TorusAngle x(BigInt(j) << (bits - log2g), bits);
    SU2 mi = cocycle.level_map(level, x);
    SU2 mi1 = cocycle.level_map(level + 1, x);
    SU2 g_xa = cocycle.conjugator(level, x + cocycle.alpha());
    SU2 g_x = cocycle.conjugator(level, x);
    SU2 lhs = compose(g_xa, compose(mi, g_x.adjoint()));
    conj_res = std::max(conj_res, frobenius_distance(lhs, mi1));

    Su2Tangent fi = log_su2(compose(a_i.adjoint(), mi));
    f[j] = fi;
    w[j] = fi.w;
    t[j] = Complex(fi.t, 0.0);
    double nn = fi.norm();
    sup = std::max(sup, nn);
    sumsq += nn * nn;
  }
  rep.conjugacy_residual = conj_res;
  rep.sup_norm = sup;
  rep.rms_norm = std::sqrt(sumsq / grid);

  auto wh = fourier_coefficients(w);
  auto th = fourier_coefficients(t);
  int mstar = 0;
  double best = -1.0;
  for (int m = 0; m < grid; ++m)
    if (std::abs(wh[m]) > best) {
      best = std::abs(wh[m]);
      mstar = m;
    }
  rep.dominant_index = mstar;
  rep.dominant_magnitude = best;
  BigInt alias = (2 * lvl.k) % grid;
  rep.expected_alias = alias.convert_to<long long>();
  rep.index_matches = (rep.dominant_index == rep.expected_alias);
  rep.planned_magnitude = kTwoPi * std::abs(lvl.fhat);
  rep.planned_mismatch = std::abs(wh[mstar] - Complex(0.0, kTwoPi) * lvl.fhat);
  rep.diagonal_mean = th[0].real();

  double removal_sumsq = 0.0;
  for (int j = 0; j < grid; ++j) {
    Complex mode = wh[mstar] * std::polar(1.0, kTwoPi * mstar * j / double(grid));
    Su2Tangent res{f[j].t, f[j].w - mode};
    double nn = res.norm();
    removal_sup = std::max(removal_sup, nn);
    removal_sumsq += nn * nn;
  }
  rep.removal_residual_sup = removal_sup;
  rep.removal_residual_rms = std::sqrt(removal_sumsq / grid);
  return rep;
}

KamStepResult kam_step(const SU2& a_const, const std::vector<Su2Tangent>& f_grid,
                       const TorusAngle& alpha) {
  const int grid = static_cast<int>(f_grid.size());
  int log2g = 0;
  while ((1 << log2g) < grid) ++log2g;
  if ((1 << log2g) != grid || grid < 4)
    throw Error(ErrorCode::Precondition, "kam_step: grid must be a power of two >= 4");
  if (std::abs(a_const.w) > 1e-12)
    throw Error(ErrorCode::Precondition, "kam_step: constant must be diagonal");

  KamStepResult out;
  double sup = 0.0;
  std::vector<Complex> w(grid);
  for (int j = 0; j < grid; ++j) {
    sup = std::max(sup, f_grid[j].norm());
    w[j] = f_grid[j].w;
  }
  out.input_sup = sup;
  if (sup > 0.1)
    throw Error(ErrorCode::Precondition, "kam_step: sup|F| <= 0.1 required");

  auto wh = fourier_coefficients(w);
  int mstar = 0;
  double best = -1.0, second = 0.0;
  for (int m = 0; m < grid; ++m) {
    double v = std::abs(wh[m]);
    if (v > best) {
      second = best;
      best = v;
      mstar = m;
    } else if (v > second) {
      second = v;
    }
  }
  out.dominant_ratio = second > 0.0 ? best / second : 1e300;
  if (out.dominant_ratio < 10.0)
    throw Error(ErrorCode::NoDominantMode,
                "spectral ratio " + std::to_string(out.dominant_ratio) + " < 10");
  long long signed_m = mstar > grid / 2 ? mstar - grid : mstar;
  if (signed_m % 2 != 0)
    throw Error(ErrorCode::NoDominantMode,
                "dominant index " + std::to_string(signed_m) + " is odd (no integer resonance)");
  long long k = signed_m / 2;
  out.k = k;

  double a_turns = std::arg(a_const.z) / kTwoPi;
  double ka = alpha.times(BigInt(k)).to_signed_double();
  double d = wrap_signed(a_turns - ka);
  double rho = best / kTwoPi;
  out.theta = std::atan2(rho, d);
  out.phi = wrap_signed(std::arg(wh[mstar]) / kTwoPi - 0.25);
  if (out.phi < 0) out.phi += 1.0;

  double a_new = ka + std::hypot(d, rho);
  out.a_new = a_new - std::floor(a_new);
  out.new_constant = SU2{std::polar(1.0, kTwoPi * out.a_new), Complex(0.0, 0.0)};

  const int bits = alpha.bits();
  out.residual.resize(grid);
  double res_sup = 0.0;
  for (int j = 0; j < grid; ++j) {
    TorusAngle x(BigInt(j) << (bits - log2g), bits);
    SU2 g_xa = conjugator_eval(BigInt(k), out.theta, out.phi, x + alpha);
    SU2 g_x = conjugator_eval(BigInt(k), out.theta, out.phi, x);
    SU2 m = compose(a_const, exp_su2(f_grid[j]));
    SU2 conj = compose(g_xa, compose(m, g_x.adjoint()));
    Su2Tangent r = log_su2(compose(out.new_constant.adjoint(), conj));
    out.residual[j] = r;
    res_sup = std::max(res_sup, r.norm());
  }
  out.residual_sup = res_sup;
  return out;
}

}  // namespace skewlab
