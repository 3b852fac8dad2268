#include "skewlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "skewlab/errors.hpp"

namespace skewlab {

Complex Observable::eval(const TorusAngle& x, const SU2& s) const {
  switch (kind) {
    case Kind::Abs11Sq:
      return Complex(std::norm(s.z), 0.0);
    case Kind::TraceReal:
      return Complex(2.0 * s.z.real(), 0.0);
    case Kind::XHarmonic:
      return std::polar(1.0, kTwoPi * m * x.to_unit_double());
    case Kind::Product:
      return std::polar(1.0, kTwoPi * m * x.to_unit_double()) * std::norm(s.z);
  }
  return {};
}

Observable Observable::parse(const std::string& text) {
  Observable o;
  if (text == "abs11sq") {
    o.kind = Kind::Abs11Sq;
  } else if (text == "trace_real") {
    o.kind = Kind::TraceReal;
  } else if (text.rfind("x_harmonic(", 0) == 0 && text.back() == ')') {
    o.kind = Kind::XHarmonic;
    o.m = std::stoi(text.substr(11, text.size() - 12));
  } else if (text.rfind("product(", 0) == 0 && text.back() == ')') {
    o.kind = Kind::Product;
    o.m = std::stoi(text.substr(8, text.size() - 9));
  } else {
    throw Error(ErrorCode::ConfigInvalid, "unknown observable '" + text + "'");
  }
  return o;
}

std::string Observable::to_text() const {
  switch (kind) {
    case Kind::Abs11Sq: return "abs11sq";
    case Kind::TraceReal: return "trace_real";
    case Kind::XHarmonic: return "x_harmonic(" + std::to_string(m) + ")";
    case Kind::Product: return "product(" + std::to_string(m) + ")";
  }
  return {};
}

OrbitSample iterate_orbit(const Cocycle& cocycle, const TorusAngle& x0, const SU2& s0,
                          std::uint64_t n, std::uint64_t stride) {
  if (stride < 1) throw Error(ErrorCode::Precondition, "stride >= 1 required");
  OrbitSample out;
  out.stride = stride;
  out.points.reserve(static_cast<std::size_t>(n / stride) + 1);

  TorusAngle x = x0;
  SU2 s = s0;
  out.points.push_back({x, s});
  for (std::uint64_t j = 0; j < n; ++j) {
    s = compose(cocycle.eval(x), s);
    x = x + cocycle.alpha();
    if ((j + 1) % kRenormCadence == 0) s = s.renormalized();
    if ((j + 1) % stride == 0) out.points.push_back({x, s});
  }
  return out;
}

AverageSeries birkhoff(const Cocycle& cocycle, const Observable& obs, const TorusAngle& x0,
                       const SU2& s0, std::uint64_t n,
                       const std::vector<std::uint64_t>& checkpoints) {
  if (n < 1) throw Error(ErrorCode::Precondition, "birkhoff: n >= 1 required");
  std::vector<std::uint64_t> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  while (!cps.empty() && cps.back() > n) cps.pop_back();
  if (cps.empty() || cps.back() != n) cps.push_back(n);

  AverageSeries out;
  TorusAngle x = x0;
  SU2 s = s0;
  Complex sum(0.0, 0.0), comp(0.0, 0.0);  // Kahan
  std::size_t ci = 0;
  for (std::uint64_t j = 0; j < n; ++j) {
    Complex v = obs.eval(x, s);
    Complex y = v - comp;
    Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    s = compose(cocycle.eval(x), s);
    x = x + cocycle.alpha();
    if ((j + 1) % kRenormCadence == 0) s = s.renormalized();
    while (ci < cps.size() && j + 1 == cps[ci]) {
      out.checkpoints.push_back(cps[ci]);
      out.averages.push_back(sum / static_cast<double>(cps[ci]));
      ++ci;
    }
  }
  return out;
}

std::vector<std::uint64_t> default_checkpoints(const CocycleSpec& spec, std::uint64_t n) {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t p = 1; p <= n && p != 0; p <<= 1) cps.push_back(p);
  for (const auto& lvl : spec.levels)
    if (lvl.n <= BigInt(n)) cps.push_back(lvl.n.convert_to<std::uint64_t>());
  cps.push_back(n);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

void export_orbit_csv(const OrbitSample& sample, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Precondition, "cannot open " + path);
  f << "step,x,re_z,im_z,re_w,im_w\n";
  f.precision(17);
  std::uint64_t step = 0;
  for (const auto& p : sample.points) {
    f << step << ',' << p.x.to_unit_double() << ',' << p.s.z.real() << ',' << p.s.z.imag()
      << ',' << p.s.w.real() << ',' << p.s.w.imag() << '\n';
    step += sample.stride;
  }
}

void export_series_csv(const AverageSeries& series, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Precondition, "cannot open " + path);
  f << "step,value,value_im\n";
  f.precision(17);
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i)
    f << series.checkpoints[i] << ',' << series.averages[i].real() << ','
      << series.averages[i].imag() << '\n';
}

}  // namespace skewlab
