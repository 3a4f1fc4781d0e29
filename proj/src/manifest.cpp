#include "nlrad/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlrad/errors.hpp"

namespace nlrad {

const char* const kArtifactVersion = "0.1.0";

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

ArtifactSink::ArtifactSink(std::filesystem::path directory) : dir_(std::move(directory)) {
  std::filesystem::create_directories(dir_);
}

void ArtifactSink::write(const std::string& name, const std::string& content) {
  const auto path = dir_ / name;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  out.close();
  for (auto& f : files_) {
    if (f.path == name) {
      f.sha256 = sha256_hex(content);
      f.bytes = content.size();
      return;
    }
  }
  files_.push_back(FileRecord{name, sha256_hex(content), content.size()});
}

void write_manifest(const ArtifactSink& sink, const ManifestInfo& info) {
  using json = nlohmann::json;
  json files = json::array();
  for (const auto& f : sink.files()) {
    files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  json m = {{"artifact", "nlrad"},
            {"version", kArtifactVersion},
            {"wall_clock", utc_now()},
            {"mode", info.mode},
            {"status", info.status},
            {"exit_code", info.exit_code},
            {"seed", info.seed},
            {"config", info.config_json.empty() ? json(nullptr) : json::parse(info.config_json)},
            {"tolerances", info.tolerances_json.empty() ? json::object() : json::parse(info.tolerances_json)},
            {"results", info.results_json.empty() ? json::object() : json::parse(info.results_json)},
            {"files", files}};
  if (!info.error.empty()) m["error"] = info.error;
  std::ofstream out(sink.directory() / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write manifest in " + sink.directory().string());
  out << m.dump(2) << '\n';
}

bool manifest_consistent(const std::filesystem::path& manifest_path, std::string* problem) {
  using json = nlohmann::json;
  const json m = json::parse(read_file(manifest_path));
  const auto dir = manifest_path.parent_path();
  for (const auto& f : m.at("files")) {
    const auto path = dir / f.at("path").get<std::string>();
    if (!std::filesystem::exists(path) || sha256_file(path) != f.at("sha256").get<std::string>()) {
      if (problem) *problem = "digest mismatch for " + path.string();
      return false;
    }
  }
  return true;
}

}  // namespace nlrad
