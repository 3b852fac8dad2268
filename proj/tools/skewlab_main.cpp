// Command-line front end: plan and probe truncated SU(2) normal forms over
// a fixed irrational rotation. See README.md for the config schema.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skewlab/config.hpp"
#include "skewlab/report_io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw skewlab::Error(skewlab::ErrorCode::Precondition, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewlab: truncated KAM normal forms for SU(2) skew products"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int precision_bits = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 1;

  app.add_option("--config", config_path, "JSON config file (defaults apply when omitted)");
  app.add_option("--out", out_dir, "output directory (overrides output.directory)");
  app.add_option("--precision-bits", precision_bits, "fixed-point precision override");
  app.add_option("--seed", seed, "seed for random starts")->each([&](const std::string&) {
    seed_set = true;
  });
  app.add_option("--workers", workers, "worker threads for independent starts");

  const char* commands[] = {"plan",   "verify", "orbit",    "birkhoff",  "conditions",
                            "chain",  "clusters", "coverage", "scan-phase"};
  for (const char* c : commands) app.add_subcommand(c, "");

  CLI11_PARSE(app, argc, argv);
  std::string command = app.get_subcommands().front()->get_name();

  try {
    skewlab::Config cfg = config_path.empty()
                              ? skewlab::Config::defaults()
                              : skewlab::Config::from_json_text(read_file(config_path));
    if (!out_dir.empty()) cfg.output.directory = out_dir;
    if (precision_bits > 0) cfg.precision_bits = precision_bits;
    if (seed_set) cfg.seed = seed;
    cfg.workers = workers;

    skewlab::RunResult result = skewlab::run_command(command, cfg);
    for (const auto& [file, digest] : result.manifest)
      std::cout << digest << "  " << file << "\n";
    return result.exit_status;
  } catch (const skewlab::Error& e) {
    skewlab::Json err;
    err["error"] = skewlab::name_of(e.code());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return skewlab::exit_code_for(e.code());
  } catch (const std::exception& e) {
    skewlab::Json err;
    err["error"] = "Unhandled";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 4;
  }
}
