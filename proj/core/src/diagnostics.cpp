#include "skewlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace skewlab {

namespace {

// sup of |F_{level}| measured on the spec's grid; the top residual (level
// N+1) is known in closed form.
double sup_f_at_level(const Cocycle& cocycle, int level) {
  const auto& spec = cocycle.spec();
  const int N = spec.depth();
  if (level == N + 1)
    return spec.top_mode.kind == TopMode::Kind::Zero ? 0.0
                                                     : kTwoPi * spec.top_mode.magnitude;
  LevelVerifyReport rep = verify_level(cocycle, level, spec.grid_size);
  return rep.sup_norm;
}

}  // namespace

ConditionReport check_conditions(const Cocycle& cocycle) {
  const auto& spec = cocycle.spec();
  const TorusAngle& alpha = cocycle.alpha();
  ConditionReport rep;
  rep.epsilon = spec.epsilon;
  rep.eq2_strictly_decreasing = true;
  rep.eq3_all_pass = true;
  rep.eq6_all_pass = true;

  double prev = 2.0;
  for (int i = 1; i <= spec.depth(); ++i) {
    const auto& lvl = spec.levels[i - 1];
    ConditionReport::Level row;
    row.level = i;
    row.n = lvl.n;
    row.tau_adjust = lvl.tau_adjust;
    row.dist_n_alpha = alpha.times(lvl.n).dist(Grid::Z);
    row.dist_n_atop_half = spec.a_top.times(lvl.n).dist(Grid::ZHalf);
    row.dist_n_alevel_half = lvl.a.times(lvl.n).dist(Grid::ZHalf);
    row.dist_kn_alpha_half = alpha.times(lvl.k * lvl.n).dist(Grid::ZHalf);
    row.sup_f_above = sup_f_at_level(cocycle, i + 1);
    row.n_times_sup_f = lvl.n.convert_to<double>() * row.sup_f_above;
    row.eq3_pass = row.dist_n_atop_half >= spec.epsilon;
    row.eq6_pass = row.dist_kn_alpha_half >= spec.epsilon;
    if (row.dist_n_alpha >= prev) rep.eq2_strictly_decreasing = false;
    prev = row.dist_n_alpha;
    rep.eq3_all_pass = rep.eq3_all_pass && row.eq3_pass;
    rep.eq6_all_pass = rep.eq6_all_pass && row.eq6_pass;
    rep.levels.push_back(std::move(row));
  }
  return rep;
}

ClusterReport partial_product_clusters(const std::vector<double>& theta,
                                       const std::vector<double>& phi, std::uint64_t horizon,
                                       double radius) {
  if (horizon < 1) throw Error(ErrorCode::Precondition, "horizon >= 1 required");
  if (radius <= 0) throw Error(ErrorCode::Precondition, "radius > 0 required");

  ClusterReport rep;
  rep.radius = radius;
  rep.horizon = horizon;

  SU2 prod = SU2::identity();
  for (std::uint64_t j = 1; j <= horizon; ++j) {
    double th = theta[(j - 1) % theta.size()];
    double ph = phi.empty() ? 0.0 : phi[(j - 1) % phi.size()];
    prod = compose(d_matrix(th, ph), prod);
    if (j % kRenormCadence == 0) prod = prod.renormalized();

    double best = 1e300;
    std::size_t best_i = 0;
    for (std::size_t c = 0; c < rep.clusters.size(); ++c) {
      double d = dist_so3(prod, rep.clusters[c].center).value;
      if (d < best) {
        best = d;
        best_i = c;
      }
    }
    if (rep.clusters.empty() || best > 2.0 * radius) {
      rep.clusters.push_back({prod, 1, 0.0});
    } else {
      auto& cl = rep.clusters[best_i];
      cl.count += 1;
      cl.max_point_distance = std::max(cl.max_point_distance, best);
    }
  }

  rep.min_separation = rep.clusters.size() < 2 ? 0.0 : 1e300;
  for (std::size_t a = 0; a < rep.clusters.size(); ++a)
    for (std::size_t b = a + 1; b < rep.clusters.size(); ++b)
      rep.min_separation = std::min(
          rep.min_separation, dist_so3(rep.clusters[a].center, rep.clusters[b].center).value);
  return rep;
}

ChainErrorReport proof_chain_report(const Cocycle& cocycle, int level) {
  const auto& spec = cocycle.spec();
  const int N = spec.depth();
  if (level < 1 || level > N)
    throw Error(ErrorCode::Precondition, "proof_chain_report: level out of range");
  if (!cocycle.fast_path_available())
    throw Error(ErrorCode::FastPathUnavailable, "proof chain needs the constant top map");

  const auto& lvl = spec.levels[level - 1];
  const TorusAngle& alpha = cocycle.alpha();
  const int bits = spec.precision_bits;
  const BigInt& n = lvl.n;

  ChainErrorReport rep;
  rep.level = level;
  rep.n = n;

  TorusAngle zero = TorusAngle::zero(bits);
  TorusAngle na = angle_times_int(n, alpha).value;

  // True orbit point, fast path: A^{(n)}(0) = H_N(n a)^* A_top^n H_N(0).
  SU2 truth = cocycle.product_at(zero, n, 1u << 20);

  // Same point through the level-l telescope:
  //   H_l(n a)^* (A_{l+1} e^{F_{l+1}})^{(n)}(0) H_l(0),
  // the middle factor in closed form through the remaining levels.
  SU2 h_l_na = cocycle.h(level, na);
  SU2 h_l_0 = cocycle.h(level, zero);
  SU2 upper_0 = cocycle.h_partial(level + 1, N, zero);
  SU2 upper_na = cocycle.h_partial(level + 1, N, na);
  SU2 atop_n = cocycle.top_power(n);
  SU2 middle = compose(upper_na.adjoint(), compose(atop_n, upper_0));
  SU2 telescoped = compose(h_l_na.adjoint(), compose(middle, h_l_0));
  rep.delta_exact = dist_so3(truth, telescoped).value;

  rep.delta_h = dist_so3(h_l_na, h_l_0).value;
  rep.delta_f = dist_so3(middle, atop_n).value;

  SU2 target = compose(h_l_0.adjoint(), compose(atop_n, h_l_0));
  rep.delta_total = dist_so3(truth, target).value;
  rep.budget_rhs = rep.delta_exact + 2.0 * rep.delta_h + rep.delta_f + 1e-9;
  rep.budget_holds = rep.delta_total <= rep.budget_rhs;

  double sum_k = 0.0;
  for (int j = 1; j <= level; ++j) sum_k += spec.levels[j - 1].k.convert_to<double>();
  rep.lip_h_bound = 4.0 * kPi * sum_k;
  rep.lip_h_times_dist = rep.lip_h_bound * na.dist(Grid::Z);

  rep.atop_pow_dist_half = spec.a_top.times(n).dist(Grid::ZHalf);
  SU2 id = SU2::identity();
  rep.atop_pow_so3_id = dist_so3(atop_n, id).value;  // quotient metric covers -Id
  rep.atop_away_from_pmid = rep.atop_pow_dist_half >= spec.epsilon;
  rep.alevel_pow_dist_half = lvl.a.times(n).dist(Grid::ZHalf);
  return rep;
}

SpreadReport ue_probe(const Cocycle& cocycle, const Observable& obs,
                      const std::vector<Start>& starts, std::uint64_t n,
                      const std::vector<std::uint64_t>& checkpoints, int workers) {
  if (starts.size() < 1) throw Error(ErrorCode::Precondition, "ue_probe: needs starts");
  SpreadReport rep;
  std::vector<AverageSeries> series(starts.size());

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      series[i] = birkhoff(cocycle, obs, starts[i].x, starts[i].s, n, checkpoints);
  };
  int nw = std::max(1, std::min<int>(workers, static_cast<int>(starts.size())));
  if (nw == 1) {
    run_range(0, starts.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (starts.size() + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      std::size_t lo = w * chunk, hi = std::min(starts.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  rep.checkpoints = series[0].checkpoints;
  rep.per_start.resize(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i)
    for (auto v : series[i].averages) rep.per_start[i].push_back(v.real());

  for (std::size_t c = 0; c < rep.checkpoints.size(); ++c) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < starts.size(); ++i) {
      lo = std::min(lo, rep.per_start[i][c]);
      hi = std::max(hi, rep.per_start[i][c]);
    }
    rep.spread.push_back(starts.size() > 1 ? hi - lo : 0.0);
  }
  rep.final_spread = rep.spread.empty() ? 0.0 : rep.spread.back();
  return rep;
}

int fiber_cell_of(const SU2& s, int b) {
  auto q = s.quaternion();
  int imax = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(q[i]) > std::abs(q[imax])) imax = i;
  if (q[imax] < 0)
    for (auto& v : q) v = -v;
  int idx = 0;
  for (int i = 1; i < 4; ++i) {
    int cell = static_cast<int>(std::floor((q[i] + 1.0) / 2.0 * b));
    cell = std::clamp(cell, 0, b - 1);
    idx = idx * b + cell;
  }
  return idx;
}

CoverageReport coverage_probe(const Cocycle& cocycle, int cells_x, int cells_q,
                              const TorusAngle& x0, const SU2& s0, std::uint64_t n,
                              std::uint64_t stride,
                              const std::vector<std::uint64_t>& checkpoints) {
  if (cells_x < 2 || cells_q < 2)
    throw Error(ErrorCode::Precondition, "coverage_probe: net resolutions >= 2");
  if (stride < 1) throw Error(ErrorCode::Precondition, "stride >= 1 required");
  int b = std::max(1, static_cast<int>(std::lround(std::cbrt(double(cells_q)))));

  CoverageReport rep;
  rep.cells_x = cells_x;
  rep.cells_fiber = b * b * b;
  const double total = double(cells_x) * double(rep.cells_fiber);

  std::vector<std::uint64_t> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  while (!cps.empty() && cps.back() > n) cps.pop_back();
  if (cps.empty() || cps.back() != n) cps.push_back(n);

  std::vector<char> visited(static_cast<std::size_t>(cells_x) * rep.cells_fiber, 0);
  std::uint64_t count = 0;

  TorusAngle x = x0;
  SU2 s = s0;
  std::size_t ci = 0;
  auto mark = [&](const TorusAngle& xx, const SU2& ss) {
    int xc = std::clamp(static_cast<int>(xx.to_unit_double() * cells_x), 0, cells_x - 1);
    std::size_t cell = static_cast<std::size_t>(xc) * rep.cells_fiber + fiber_cell_of(ss, b);
    if (!visited[cell]) {
      visited[cell] = 1;
      ++count;
    }
  };
  mark(x, s);
  for (std::uint64_t j = 0; j < n; ++j) {
    s = compose(cocycle.eval(x), s);
    x = x + cocycle.alpha();
    if ((j + 1) % kRenormCadence == 0) s = s.renormalized();
    if ((j + 1) % stride == 0) mark(x, s);
    while (ci < cps.size() && j + 1 == cps[ci]) {
      rep.checkpoints.push_back(cps[ci]);
      rep.fraction.push_back(count / total);
      ++ci;
    }
  }
  rep.final_fraction = rep.fraction.empty() ? count / total : rep.fraction.back();
  return rep;
}

}  // namespace skewlab
