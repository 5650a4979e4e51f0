#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace linefig {

namespace fs = std::filesystem;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
/// 16 lowercase hex digits.
std::string hash_hex(std::uint64_t h);
std::string content_hash(std::string_view data);

std::string read_file(const fs::path& path);

/// Writes `content` to a temporary file next to `path` and renames it into
/// place, so readers never observe a partial file.
void write_atomic(const fs::path& path, std::string_view content);

/// Stage manifest `<stage>.manifest.json` in the output directory.
struct Manifest {
  std::string stage;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::map<std::string, std::string> inputs;   // file name -> hash
  std::map<std::string, std::string> outputs;  // file name -> hash
  nlohmann::ordered_json report = nlohmann::ordered_json::object();

  [[nodiscard]] nlohmann::ordered_json to_json() const;
  static Manifest from_json(const nlohmann::ordered_json& j);
};

fs::path manifest_path(const fs::path& dir, std::string_view stage);

/// Writes each output atomically, records its hash, then writes the manifest.
class ArtifactWriter {
 public:
  ArtifactWriter(fs::path dir, std::string stage);

  void add(const std::string& name, std::string content);
  void input(const std::string& name, const std::string& hash) { manifest_.inputs[name] = hash; }
  nlohmann::ordered_json& params() { return manifest_.params; }
  nlohmann::ordered_json& report() { return manifest_.report; }
  const Manifest& commit();

 private:
  fs::path dir_;
  Manifest manifest_;
};

/// Loads an upstream stage manifest and checks that every output it lists
/// is present with the recorded hash. Throws ValidationError for a missing
/// or stale artifact.
Manifest require_stage(const fs::path& dir, std::string_view stage);

/// Reads an artifact listed by `manifest` after re-checking its hash.
std::string read_artifact(const fs::path& dir, const Manifest& manifest, const std::string& name);

}  // namespace linefig
