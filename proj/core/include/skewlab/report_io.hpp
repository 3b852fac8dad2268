#pragma once

#include <map>
#include <string>

#include "json.hpp"  // vendored nlohmann/json

#include "skewlab/diagnostics.hpp"

namespace skewlab {

using Json = nlohmann::ordered_json;

Json to_json(const DiophantineEstimate& est);
Json to_json(const LevelVerifyReport& rep);
Json to_json(const ConditionReport& rep);
Json to_json(const ClusterReport& rep);
Json to_json(const ChainErrorReport& rep);
Json to_json(const SpreadReport& rep);
Json to_json(const CoverageReport& rep);

std::string to_text(const ConditionReport& rep);
std::string to_text(const ClusterReport& rep);
std::string to_text(const ChainErrorReport& rep);
std::string to_text(const LevelVerifyReport& rep);
std::string to_text(const SpreadReport& rep);
std::string to_text(const CoverageReport& rep);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

/// Write bytes, then record path -> digest. Deterministic given content.
class Manifest {
 public:
  void record(const std::string& path);
  void write(const std::string& manifest_path) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

void write_file(const std::string& path, const std::string& content);

}  // namespace skewlab
