#include "skewlab/config.hpp"

#include <cmath>

#include "skewlab/report_io.hpp"

namespace skewlab {

namespace {

void check_keys(const Json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    throw Error(ErrorCode::ConfigInvalid, path + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw Error(ErrorCode::ConfigInvalid, path + "." + key + ": unknown key");
  }
}

template <typename T>
T get_or(const Json& j, const char* key, const T& def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigInvalid, std::string(key) + ": wrong type");
  }
}

Schedule parse_schedule(const Json& j) {
  check_keys(j, "plan.schedule", {"kind", "indices", "ks", "base_index", "exponent", "factor"});
  Schedule s;
  std::string kind = get_or<std::string>(j, "kind", "indices");
  if (kind == "indices") {
    s.kind = Schedule::Kind::Indices;
    s.indices = get_or<std::vector<int>>(j, "indices", {9, 18, 36});
  } else if (kind == "explicit") {
    s.kind = Schedule::Kind::Explicit;
    for (const auto& e : j.at("ks")) s.ks.push_back(from_decimal(e.get<std::string>()));
  } else if (kind == "growth") {
    s.kind = Schedule::Kind::Growth;
    s.growth_base_index = get_or<int>(j, "base_index", 9);
    s.growth_exponent = get_or<double>(j, "exponent", 2.0);
    s.growth_factor = get_or<double>(j, "factor", 2.0);
  } else {
    throw Error(ErrorCode::ConfigInvalid, "plan.schedule.kind: unknown '" + kind + "'");
  }
  return s;
}

}  // namespace

Config Config::from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("not valid JSON: ") + e.what());
  }
  check_keys(j, "config", {"alpha", "precision_bits", "plan", "run", "probes", "output"});

  Config c;
  if (!j.contains("alpha"))
    throw Error(ErrorCode::ConfigInvalid, "alpha: required key is absent");
  c.alpha_text = j.at("alpha").get<std::string>();
  c.precision_bits = get_or<int>(j, "precision_bits", 256);
  if (c.precision_bits < 64 || c.precision_bits > 8192)
    throw Error(ErrorCode::ConfigInvalid, "precision_bits: expected 64..8192");

  if (j.contains("plan")) {
    const Json& p = j.at("plan");
    check_keys(p, "plan",
               {"depth", "schedule", "theta", "phi", "epsilon", "top_mode", "top_magnitude",
                "fhat_from_landmark", "grid_size", "dio_scan_limit"});
    c.plan.depth = get_or<int>(p, "depth", 3);
    if (p.contains("schedule")) c.plan.schedule = parse_schedule(p.at("schedule"));
    c.plan.theta = get_or<std::vector<double>>(p, "theta", {2.0, 1.2, 0.8});
    c.plan.phi = get_or<std::vector<double>>(p, "phi", {});
    c.plan.epsilon = get_or<double>(p, "epsilon", 0.05);
    std::string tm = get_or<std::string>(p, "top_mode", "zero");
    if (tm == "zero") {
      c.plan.top_mode.kind = TopMode::Kind::Zero;
    } else if (tm == "resonant") {
      c.plan.top_mode.kind = TopMode::Kind::Resonant;
      c.plan.top_mode.magnitude = get_or<double>(p, "top_magnitude", 1e-6);
    } else {
      throw Error(ErrorCode::ConfigInvalid, "plan.top_mode: expected zero|resonant");
    }
    c.plan.fhat_from_landmark = get_or<bool>(p, "fhat_from_landmark", false);
    c.plan.grid_size = get_or<int>(p, "grid_size", 4096);
    c.plan.dio_scan_limit = get_or<long long>(p, "dio_scan_limit", 1000);
  }

  if (j.contains("run")) {
    const Json& r = j.at("run");
    check_keys(r, "run", {"n", "stride", "checkpoints", "spec_file", "starts", "observable"});
    c.run.n = get_or<std::uint64_t>(r, "n", 100000);
    c.run.stride = get_or<std::uint64_t>(r, "stride", 1);
    c.run.checkpoints = get_or<std::vector<std::uint64_t>>(r, "checkpoints", {});
    c.run.spec_file = get_or<std::string>(r, "spec_file", "");
    c.run.start_count = get_or<int>(r, "starts", 8);
    c.run.observable = get_or<std::string>(r, "observable", "abs11sq");
    Observable::parse(c.run.observable);  // validate
  }

  if (j.contains("probes")) {
    const Json& p = j.at("probes");
    check_keys(p, "probes",
               {"net_x", "net_q", "cluster_radius", "cluster_horizon", "cluster_theta",
                "cluster_phi", "chain_level"});
    c.probes.net_x = get_or<int>(p, "net_x", 16);
    c.probes.net_q = get_or<int>(p, "net_q", 64);
    c.probes.cluster_radius = get_or<double>(p, "cluster_radius", 0.3);
    c.probes.cluster_horizon = get_or<std::uint64_t>(p, "cluster_horizon", 10000);
    c.probes.cluster_theta = get_or<std::string>(p, "cluster_theta", "harmonic");
    c.probes.cluster_phi = get_or<std::string>(p, "cluster_phi", "zero");
    c.probes.chain_level = get_or<int>(p, "chain_level", 0);
    theta_sequence(c.probes.cluster_theta, 1);  // validate names
    phi_sequence(c.probes.cluster_phi, 1);
  }

  if (j.contains("output")) {
    const Json& o = j.at("output");
    check_keys(o, "output", {"directory", "formats"});
    c.output.directory = get_or<std::string>(o, "directory", "out");
    c.output.formats = get_or<std::vector<std::string>>(o, "formats", {"json", "text", "csv"});
  }
  return c;
}

PlanParams Config::plan_params() const {
  PlanParams p;
  p.alpha = RotationSpec::parse(alpha_text, precision_bits);
  p.depth = plan.depth;
  p.schedule = plan.schedule;
  p.theta = plan.theta;
  p.phi = plan.phi;
  p.epsilon = plan.epsilon;
  p.top_mode = plan.top_mode;
  p.fhat_from_landmark = plan.fhat_from_landmark;
  p.grid_size = plan.grid_size;
  p.dio_scan_limit = BigInt(plan.dio_scan_limit);
  return p;
}

std::vector<double> theta_sequence(const std::string& kind, std::uint64_t horizon) {
  std::vector<double> v;
  v.reserve(horizon);
  for (std::uint64_t i = 1; i <= horizon; ++i) {
    if (kind == "harmonic")
      v.push_back(1.0 / static_cast<double>(i + 1));
    else if (kind == "power06")
      v.push_back(1.0 / std::pow(static_cast<double>(i + 1), 0.6));
    else if (kind == "geometric")
      v.push_back(std::pow(2.0, -static_cast<double>(i)));
    else
      throw Error(ErrorCode::ConfigInvalid, "cluster_theta: unknown '" + kind + "'");
  }
  return v;
}

std::vector<double> phi_sequence(const std::string& kind, std::uint64_t horizon) {
  std::vector<double> v;
  v.reserve(horizon);
  const double golden = 0.6180339887498949;
  for (std::uint64_t i = 1; i <= horizon; ++i) {
    if (kind == "zero")
      v.push_back(0.0);
    else if (kind == "golden")
      v.push_back(std::fmod(static_cast<double>(i) * golden, 1.0));
    else if (kind == "quarter")
      v.push_back(std::fmod(static_cast<double>(i) * 0.25, 1.0));
    else if (kind == "alternating")
      v.push_back(i % 2 == 0 ? 0.5 : 0.0);
    else
      throw Error(ErrorCode::ConfigInvalid, "cluster_phi: unknown '" + kind + "'");
  }
  return v;
}

}  // namespace skewlab
