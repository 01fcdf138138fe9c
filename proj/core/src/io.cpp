#include "emostock/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emostock/errors.hpp"
#include "emostock/rng.hpp"

namespace fs = std::filesystem;

namespace emostock {

void atomic_write_file(const fs::path& path, const std::string& content) {
  const fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open temp file for " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
  if (!fs::exists(path)) throw MissingArtifactError("missing file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path.string());
  return buf.str();
}

std::string file_content_hash(const fs::path& path) {
  const std::uint64_t h = fnv1a64(read_file(path));
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

void require_artifact(const fs::path& path, const std::string& role) {
  if (!fs::exists(path)) {
    throw MissingArtifactError("required artifact '" + role + "' not found at " +
                               path.string());
  }
}

void RunManifest::add_input(const fs::path& p) {
  inputs.emplace_back(p.filename().string(), file_content_hash(p));
}

void RunManifest::add_output(const fs::path& p) {
  outputs.emplace_back(p.filename().string(), file_content_hash(p));
}

void RunManifest::write(const fs::path& dir) const {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["tool_version"] = "0.1.0";
  j["stage"] = stage;
  j["seed"] = seed;
  auto file_list = [](const std::vector<std::pair<std::string, std::string>>& files) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [name, hash] : files) {
      arr.push_back({{"file", name}, {"fnv1a64", hash}});
    }
    return arr;
  };
  j["inputs"] = file_list(inputs);
  j["outputs"] = file_list(outputs);
  atomic_write_file(dir / (stage + "_manifest.json"), j.dump(2) + "\n");
}

void write_svg_line_chart(
    const fs::path& path, const std::string& title,
    const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  constexpr int kWidth = 900;
  constexpr int kHeight = 300;
  constexpr int kPad = 40;
  static constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                            "#d62728", "#9467bd", "#8c564b"};

  double lo = 0.0, hi = 1.0;
  bool first = true;
  std::size_t max_len = 0;
  for (const auto& [name, values] : series) {
    max_len = std::max(max_len, values.size());
    for (const double v : values) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  if (max_len < 2) max_len = 2;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kPad << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  std::size_t color_idx = 0;
  int legend_y = 20;
  for (const auto& [name, values] : series) {
    const char* color = kColors[color_idx % 6];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double x = kPad + (kWidth - 2.0 * kPad) * static_cast<double>(i) /
                                  static_cast<double>(max_len - 1);
      const double y =
          kHeight - kPad - (kHeight - 2.0 * kPad) * (values[i] - lo) / (hi - lo);
      svg << x << "," << y << " ";
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kWidth - 140 << "\" y=\"" << legend_y << "\" font-size=\"11\" fill=\""
        << color << "\">" << name << "</text>\n";
    legend_y += 14;
    ++color_idx;
  }
  svg << "</svg>\n";
  atomic_write_file(path, svg.str());
}

}  // namespace emostock
