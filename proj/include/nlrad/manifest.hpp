#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nlrad {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct FileRecord {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

/// Output directory that remembers everything written through it.
class ArtifactSink {
 public:
  explicit ArtifactSink(std::filesystem::path directory);

  const std::filesystem::path& directory() const noexcept { return dir_; }

  /// Writes `content` to dir/name (creating parents) and records it.
  void write(const std::string& name, const std::string& content);

  const std::vector<FileRecord>& files() const noexcept { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<FileRecord> files_;
};

/// Everything a run manifest records besides the file inventory.
struct ManifestInfo {
  std::string config_json;        // resolved config
  std::string mode;
  std::string status;             // "ok" or "error"
  int exit_code = 0;
  std::string error;
  unsigned long long seed = 0;
  std::string tolerances_json;    // object
  std::string results_json;       // object
};

/// Writes manifest.json into the sink's directory. The manifest itself is
/// not part of the inventory.
void write_manifest(const ArtifactSink& sink, const ManifestInfo& info);

/// Re-hashes every listed file and compares with the recorded digests.
bool manifest_consistent(const std::filesystem::path& manifest_path, std::string* problem = nullptr);

extern const char* const kArtifactVersion;

}  // namespace nlrad
