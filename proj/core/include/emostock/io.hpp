#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace emostock {

/// Writes `content` to `path` atomically (temp file in the same directory,
/// then rename). Creates parent directories as needed.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

/// Whole-file read; throws MissingArtifactError when absent, IoError otherwise.
std::string read_file(const std::filesystem::path& path);

/// FNV-1a 64 content hash of a file, as 16 lowercase hex digits.
std::string file_content_hash(const std::filesystem::path& path);

/// Throws MissingArtifactError naming `role` when `path` does not exist.
void require_artifact(const std::filesystem::path& path, const std::string& role);

/// Machine-readable record of one pipeline stage run. Paths are stored as
/// basenames so that reruns in different directories stay byte-identical.
struct RunManifest {
  std::string stage;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;   // (basename, hash)
  std::vector<std::pair<std::string, std::string>> outputs;  // (basename, hash)

  void add_input(const std::filesystem::path& p);
  void add_output(const std::filesystem::path& p);
  /// Serializes and writes `<stage>_manifest.json` into `dir`.
  void write(const std::filesystem::path& dir) const;
};

/// Minimal SVG polyline chart, one line per named series (display-only
/// convenience behind the CLI --plot flag).
void write_svg_line_chart(const std::filesystem::path& path, const std::string& title,
                          const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace emostock
