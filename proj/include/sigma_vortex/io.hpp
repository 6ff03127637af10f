#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigma_vortex/config.hpp"
#include "sigma_vortex/solver.hpp"

namespace sigma_vortex {

using Json = nlohmann::ordered_json;

/// Contents of a `key = value` run file. Values are JSON literals; `#` starts
/// a comment. Keys: poles, zeros, varrho, r0, beta, rmax, h, radial_nodes,
/// core, tol, method.
struct RunFile {
  RawConfig raw;
  std::optional<double> beta;
  std::optional<double> rmax;
  std::optional<double> h;
  std::optional<std::size_t> radial_nodes;
  std::optional<double> core;
  std::optional<double> tol;
  std::optional<Method> method;
};

RunFile parse_run_file(const std::string& text);
RunFile load_run_file(const std::filesystem::path& path);

Json to_json(const VortexConfig& config);

std::string tool_version();

/// Provenance written at the top of every output file.
struct RunManifest {
  std::string subcommand;
  Json config = Json::object();
  Json grid = Json::object();
  Json solver = Json::object();
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string version = tool_version();
  /// Only in the JSON sidecar; CSV headers stay byte-stable.
  std::string wall_clock;

  Json to_json(bool with_wall_clock = true) const;
  /// "# key: value" lines for CSV headers.
  std::string csv_header() const;
};

/// Writes below `out_dir` only; rejects names that escape it.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);
  std::filesystem::path path_for(const std::string& name) const;
  void write_text(const std::string& name, const std::string& text) const;
  void write_json(const std::string& name, const Json& value) const;
  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  std::filesystem::path root_;
};

/// CSV text: manifest header, column names, rows printed with 17 significant digits.
std::string format_csv(const RunManifest& manifest, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows);

/// Numeric CSV reader: skips `#` lines and a non-numeric header line.
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace sigma_vortex
