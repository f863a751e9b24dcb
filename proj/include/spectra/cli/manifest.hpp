#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spectra/rng.hpp"

namespace spectra::cli {

std::string sha256_hex(std::string_view data);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

struct RunManifest {
  std::string command;
  std::string config_hash;
  Seed master_seed = 0;
  std::string tool_version;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;  // file names relative to the output directory

  nlohmann::json to_json() const;
  void write(const std::filesystem::path& dir) const;
};

}  // namespace spectra::cli
