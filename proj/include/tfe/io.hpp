#pragma once
#include <string>
#include <vector>

#include "json.hpp"

namespace tfe::io {

// Fixed, locale-independent formatting: 17 significant digits, '.' decimal.
std::string format_double(double x);

// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& bytes);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// CSV with a header row, '\n' line endings.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

// Standalone SVG line plot: axes, tick labels, legend; byte-deterministic
// for identical input.
std::string render_svg(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel,
                       const std::vector<PlotSeries>& series);

// Run manifest: resolved config, checksummed artifact list, toolchain
// versions, wall-clock seconds.  Artifacts are added by content so the
// recorded checksum always matches the written bytes.
class Manifest {
 public:
  explicit Manifest(nlohmann::json config) : config_(std::move(config)) {}

  // Writes the artifact under dir and records its checksum.
  void add_artifact(const std::string& dir, const std::string& name,
                    const std::string& content);
  void set_diagnostic(const std::string& message);
  void set_result(const std::string& key, const nlohmann::json& value);

  // Writes manifest.json under dir.
  void write(const std::string& dir, double wallclock_seconds) const;

 private:
  nlohmann::json config_;
  nlohmann::json results_ = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> artifacts_;  // path, sha
  std::string diagnostic_;
};

}  // namespace tfe::io
