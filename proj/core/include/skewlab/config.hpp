#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skewlab/dynamics.hpp"
#include "skewlab/normal_form.hpp"

namespace skewlab {

/// Validated run configuration. Parsing is strict: unknown keys are
/// rejected with the path of the offending key; every omitted field takes
/// the documented default (see docs/config_schema.json).
struct Config {
  std::string alpha_text{"quadratic:(-1+1*sqrt(5))/2"};
  int precision_bits{256};

  struct Plan {
    int depth{3};
    Schedule schedule{};
    std::vector<double> theta{2.0, 1.2, 0.8};
    std::vector<double> phi{};
    double epsilon{0.05};
    TopMode top_mode{};
    bool fhat_from_landmark{false};
    int grid_size{4096};
    long long dio_scan_limit{1000};
  } plan;

  struct Run {
    std::uint64_t n{100000};
    std::uint64_t stride{1};
    std::vector<std::uint64_t> checkpoints{};  // empty = powers of 2 + landmarks
    std::string spec_file{};                   // empty = <out>/spec.json
    int start_count{8};
    std::string observable{"abs11sq"};
  } run;

  struct Probes {
    int net_x{16};
    int net_q{64};
    double cluster_radius{0.3};
    std::uint64_t cluster_horizon{10000};
    std::string cluster_theta{"harmonic"};  // harmonic | power06 | geometric
    std::string cluster_phi{"zero"};        // zero | golden | quarter | alternating
    int chain_level{0};                     // 0 = all levels
  } probes;

  struct Output {
    std::string directory{"out"};
    std::vector<std::string> formats{"json", "text", "csv"};
  } output;

  // CLI-level knobs (flags, not config keys)
  std::uint64_t seed{20260810};
  int workers{1};

  static Config from_json_text(const std::string& text);
  static Config defaults() { return {}; }

  PlanParams plan_params() const;
};

struct RunResult {
  int exit_status{0};
  std::map<std::string, std::string> manifest;  // file name -> sha256
};

/// Dispatch one CLI command. Commands: plan, verify, orbit, birkhoff,
/// conditions, chain, clusters, coverage, scan-phase.
RunResult run_command(const std::string& command, const Config& config);

std::vector<double> theta_sequence(const std::string& kind, std::uint64_t horizon);
std::vector<double> phi_sequence(const std::string& kind, std::uint64_t horizon);

}  // namespace skewlab
