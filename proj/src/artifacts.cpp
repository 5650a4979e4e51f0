#include "linefig/artifacts.hpp"

#include <fstream>
#include <sstream>

#include "linefig/errors.hpp"

namespace linefig {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xF];
  return out;
}

std::string content_hash(std::string_view data) { return hash_hex(fnv1a64(data)); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ValidationError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

nlohmann::ordered_json Manifest::to_json() const {
  nlohmann::ordered_json j;
  j["stage"] = stage;
  j["params"] = params;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["report"] = report;
  return j;
}

Manifest Manifest::from_json(const nlohmann::ordered_json& j) {
  Manifest m;
  m.stage = j.at("stage").get<std::string>();
  m.params = j.value("params", nlohmann::ordered_json::object());
  m.inputs = j.value("inputs", std::map<std::string, std::string>{});
  m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
  m.report = j.value("report", nlohmann::ordered_json::object());
  return m;
}

fs::path manifest_path(const fs::path& dir, std::string_view stage) {
  return dir / (std::string(stage) + ".manifest.json");
}

ArtifactWriter::ArtifactWriter(fs::path dir, std::string stage) : dir_(std::move(dir)) {
  manifest_.stage = std::move(stage);
  fs::create_directories(dir_);
}

void ArtifactWriter::add(const std::string& name, std::string content) {
  write_atomic(dir_ / name, content);
  manifest_.outputs[name] = content_hash(content);
}

const Manifest& ArtifactWriter::commit() {
  write_atomic(manifest_path(dir_, manifest_.stage), manifest_.to_json().dump(2) + "\n");
  return manifest_;
}

Manifest require_stage(const fs::path& dir, std::string_view stage) {
  const auto path = manifest_path(dir, stage);
  if (!fs::exists(path)) {
    throw ValidationError("missing upstream artifact: " + path.string() + " (run '" + std::string(stage) + "' first)");
  }
  Manifest m;
  try {
    m = Manifest::from_json(nlohmann::ordered_json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("corrupt manifest " + path.string() + ": " + e.what());
  }
  for (const auto& [name, hash] : m.outputs) {
    const auto file = dir / name;
    if (!fs::exists(file)) throw ValidationError("missing upstream artifact: " + file.string());
    if (content_hash(read_file(file)) != hash) {
      throw ValidationError("stale upstream artifact: " + file.string() + " does not match its manifest hash");
    }
  }
  return m;
}

std::string read_artifact(const fs::path& dir, const Manifest& manifest, const std::string& name) {
  const auto it = manifest.outputs.find(name);
  if (it == manifest.outputs.end()) {
    throw ValidationError("stage '" + manifest.stage + "' did not produce " + name);
  }
  auto content = read_file(dir / name);
  if (content_hash(content) != it->second) {
    throw ValidationError("stale upstream artifact: " + (dir / name).string() + " does not match its manifest hash");
  }
  return content;
}

}  // namespace linefig
