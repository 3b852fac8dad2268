#include <filesystem>
#include <fstream>
#include <sstream>

#include "skewlab/config.hpp"
#include "skewlab/report_io.hpp"
#include "skewlab/rng.hpp"

namespace skewlab {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Precondition, "missing file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Outputs {
  fs::path dir;
  Manifest manifest;
  bool json, text, csv;

  explicit Outputs(const Config& c) : dir(c.output.directory) {
    fs::create_directories(dir);
    auto has = [&](const char* f) {
      for (const auto& s : c.output.formats)
        if (s == f) return true;
      return false;
    };
    json = has("json");
    text = has("text");
    csv = has("csv");
  }

  void emit(const std::string& stem, const Json& j, const std::string& txt) {
    if (json) {
      auto p = (dir / (stem + ".json")).string();
      write_file(p, j.dump(2) + "\n");
      manifest.record(p);
    }
    if (text && !txt.empty()) {
      auto p = (dir / (stem + ".txt")).string();
      write_file(p, txt);
      manifest.record(p);
    }
  }

  void emit_raw(const std::string& name, const std::string& content) {
    auto p = (dir / name).string();
    write_file(p, content);
    manifest.record(p);
  }

  RunResult finish() {
    manifest.write((dir / "manifest.json").string());
    RunResult r;
    r.exit_status = 0;
    for (const auto& [p, d] : manifest.entries()) {
      auto slash = p.find_last_of('/');
      r.manifest[slash == std::string::npos ? p : p.substr(slash + 1)] = d;
    }
    return r;
  }
};

CocycleSpec load_spec(const Config& c) {
  std::string path = c.run.spec_file.empty()
                         ? (fs::path(c.output.directory) / "spec.json").string()
                         : c.run.spec_file;
  return spec_from_json_text(read_file(path));
}

std::vector<Start> make_starts(const Config& c, const Cocycle& cocycle) {
  std::vector<Start> starts;
  DeterministicRng rng(c.seed);
  int bits = cocycle.spec().precision_bits;
  for (int i = 0; i < c.run.start_count; ++i)
    starts.push_back({rng.torus_angle(bits), rng.haar_su2()});
  if (starts.empty()) starts.push_back({TorusAngle::zero(bits), SU2::identity()});
  return starts;
}

std::vector<std::uint64_t> checkpoints_for(const Config& c, const CocycleSpec& spec) {
  if (!c.run.checkpoints.empty()) return c.run.checkpoints;
  return default_checkpoints(spec, c.run.n);
}

RunResult cmd_plan(const Config& c) {
  Outputs out(c);
  CocycleSpec spec = plan_levels(c.plan_params());
  out.emit_raw("spec.json", spec_to_json_text(spec));
  DiophantineEstimate dio =
      diophantine_scan(RotationSpec::parse(c.alpha_text, c.precision_bits),
                       BigInt(c.plan.dio_scan_limit));
  out.emit("diophantine", to_json(dio), "");
  return out.finish();
}

RunResult cmd_verify(const Config& c) {
  Outputs out(c);
  CocycleSpec spec = load_spec(c);
  Cocycle cocycle = assemble(spec);
  Json all = Json::array();
  std::string txt;
  for (int l = 1; l <= spec.depth(); ++l) {
    LevelVerifyReport rep = verify_level(cocycle, l, spec.grid_size);
    all.push_back(to_json(rep));
    txt += to_text(rep);
  }
  out.emit("verify", all, txt);
  return out.finish();
}

RunResult cmd_orbit(const Config& c) {
  Outputs out(c);
  CocycleSpec spec = load_spec(c);
  Cocycle cocycle = assemble(spec);
  // orbit of (0, Id): the corollary's probe point
  std::uint64_t stride = c.run.stride;
  std::uint64_t max_points = 1u << 16;
  if (c.run.n / stride > max_points) stride = c.run.n / max_points;
  OrbitSample sample = iterate_orbit(cocycle, TorusAngle::zero(spec.precision_bits),
                                     SU2::identity(), c.run.n, stride);
  auto p = (out.dir / "orbit.csv").string();
  export_orbit_csv(sample, p);
  out.manifest.record(p);
  return out.finish();
}

RunResult cmd_birkhoff(const Config& c) {
  Outputs out(c);
  CocycleSpec spec = load_spec(c);
  Cocycle cocycle = assemble(spec);
  Observable obs = Observable::parse(c.run.observable);
  auto cps = checkpoints_for(c, spec);
  std::vector<Start> starts = make_starts(c, cocycle);
  if (starts.size() == 1) {
    AverageSeries series =
        birkhoff(cocycle, obs, starts[0].x, starts[0].s, c.run.n, cps);
    auto p = (out.dir / "birkhoff.csv").string();
    export_series_csv(series, p);
    out.manifest.record(p);
  } else {
    SpreadReport rep = ue_probe(cocycle, obs, starts, c.run.n, cps, c.workers);
    out.emit("spread", to_json(rep), to_text(rep));
    if (out.csv) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "step";
      for (std::size_t i = 0; i < rep.per_start.size(); ++i) csv << ",start" << i;
      csv << ",spread\n";
      for (std::size_t cdx = 0; cdx < rep.checkpoints.size(); ++cdx) {
        csv << rep.checkpoints[cdx];
        for (std::size_t i = 0; i < rep.per_start.size(); ++i)
          csv << ',' << rep.per_start[i][cdx];
        csv << ',' << rep.spread[cdx] << '\n';
      }
      out.emit_raw("birkhoff.csv", csv.str());
    }
  }
  return out.finish();
}

RunResult cmd_conditions(const Config& c) {
  Outputs out(c);
  CocycleSpec spec = load_spec(c);
  Cocycle cocycle = assemble(spec);
  ConditionReport rep = check_conditions(cocycle);
  out.emit("conditions", to_json(rep), to_text(rep));
  return out.finish();
}

RunResult cmd_chain(const Config& c) {
  Outputs out(c);
  CocycleSpec spec = load_spec(c);
  Cocycle cocycle = assemble(spec);
  Json all = Json::array();
  std::string txt;
  int lo = c.probes.chain_level == 0 ? 1 : c.probes.chain_level;
  int hi = c.probes.chain_level == 0 ? spec.depth() : c.probes.chain_level;
  for (int l = lo; l <= hi; ++l) {
    ChainErrorReport rep = proof_chain_report(cocycle, l);
    all.push_back(to_json(rep));
    txt += to_text(rep);
  }
  out.emit("chain", all, txt);
  return out.finish();
}

RunResult cmd_clusters(const Config& c) {
  Outputs out(c);
  auto theta = theta_sequence(c.probes.cluster_theta, c.probes.cluster_horizon);
  auto phi = phi_sequence(c.probes.cluster_phi, c.probes.cluster_horizon);
  ClusterReport rep =
      partial_product_clusters(theta, phi, c.probes.cluster_horizon, c.probes.cluster_radius);
  out.emit("clusters", to_json(rep), to_text(rep));
  return out.finish();
}

RunResult cmd_coverage(const Config& c) {
  Outputs out(c);
  CocycleSpec spec = load_spec(c);
  Cocycle cocycle = assemble(spec);
  auto cps = checkpoints_for(c, spec);
  CoverageReport rep =
      coverage_probe(cocycle, c.probes.net_x, c.probes.net_q,
                     TorusAngle::zero(spec.precision_bits), SU2::identity(), c.run.n,
                     c.run.stride, cps);
  out.emit("coverage", to_json(rep), to_text(rep));
  return out.finish();
}

RunResult cmd_scan_phase(const Config& c) {
  Outputs out(c);
  const std::vector<std::string> thetas{"harmonic", "power06", "geometric"};
  const std::vector<std::string> phis{"zero", "golden", "quarter", "alternating"};
  Json table = Json::array();
  std::ostringstream csv;
  csv << "theta,phi,clusters,min_separation\n";
  for (const auto& tk : thetas)
    for (const auto& pk : phis) {
      auto theta = theta_sequence(tk, c.probes.cluster_horizon);
      auto phi = phi_sequence(pk, c.probes.cluster_horizon);
      ClusterReport rep = partial_product_clusters(theta, phi, c.probes.cluster_horizon,
                                                   c.probes.cluster_radius);
      Json row;
      row["theta"] = tk;
      row["phi"] = pk;
      row["clusters"] = rep.clusters.size();
      row["min_separation"] = rep.min_separation;
      table.push_back(row);
      csv << tk << ',' << pk << ',' << rep.clusters.size() << ',' << rep.min_separation
          << '\n';
    }
  out.emit("scan_phase", table, "");
  if (out.csv) out.emit_raw("scan_phase.csv", csv.str());
  return out.finish();
}

}  // namespace

RunResult run_command(const std::string& command, const Config& c) {
  if (command == "plan") return cmd_plan(c);
  if (command == "verify") return cmd_verify(c);
  if (command == "orbit") return cmd_orbit(c);
  if (command == "birkhoff") return cmd_birkhoff(c);
  if (command == "conditions") return cmd_conditions(c);
  if (command == "chain") return cmd_chain(c);
  if (command == "clusters") return cmd_clusters(c);
  if (command == "coverage") return cmd_coverage(c);
  if (command == "scan-phase") return cmd_scan_phase(c);
  throw Error(ErrorCode::ConfigInvalid, "unknown command '" + command + "'");
}

}  // namespace skewlab
