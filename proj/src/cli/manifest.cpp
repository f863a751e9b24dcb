#include "spectra/cli/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>

#include "spectra/error.hpp"
#include "spectra/io.hpp"

namespace spectra::cli {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::IoError, "SHA-256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command},         {"config_hash", config_hash}, {"master_seed", master_seed},
          {"tool_version", tool_version}, {"started", started},         {"finished", finished},
          {"outputs", outputs}};
}

void RunManifest::write(const std::filesystem::path& dir) const {
  write_text_file(dir / "manifest.json", to_json().dump(2) + "\n");
}

}  // namespace spectra::cli
