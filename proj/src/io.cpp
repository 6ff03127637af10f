#include "sigma_vortex/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef SIGMA_VORTEX_VERSION
#define SIGMA_VORTEX_VERSION "0.0.0"
#endif

namespace sigma_vortex {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<Point2> parse_points(const Json& v, const std::string& key) {
  if (!v.is_array()) throw Error(ErrorKind::config, key + " must be a list of [x, y] pairs");
  std::vector<Point2> out;
  for (const auto& p : v) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw Error(ErrorKind::config, key + " must be a list of [x, y] pairs");
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

double number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw Error(ErrorKind::config, key + " must be a number");
  return v.get<double>();
}

}  // namespace

RunFile parse_run_file(const std::string& text) {
  RunFile run;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::config, "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    Json value;
    try {
      value = Json::parse(trim(line.substr(eq + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::config, "line " + std::to_string(lineno) + ": cannot parse value of " + key);
    }
    if (key == "poles") {
      run.raw.poles = parse_points(value, key);
    } else if (key == "zeros") {
      run.raw.zeros = parse_points(value, key);
    } else if (key == "varrho") {
      run.raw.varrho = number(value, key);
    } else if (key == "r0") {
      run.raw.r0 = number(value, key);
    } else if (key == "beta") {
      run.beta = number(value, key);
    } else if (key == "rmax") {
      run.rmax = number(value, key);
    } else if (key == "h") {
      run.h = number(value, key);
    } else if (key == "radial_nodes") {
      const double n = number(value, key);
      if (!(n >= 3.0) || n != std::floor(n)) throw Error(ErrorKind::config, "radial_nodes must be an integer >= 3");
      run.radial_nodes = static_cast<std::size_t>(n);
    } else if (key == "core") {
      run.core = number(value, key);
    } else if (key == "tol") {
      run.tol = number(value, key);
    } else if (key == "method") {
      if (!value.is_string()) throw Error(ErrorKind::config, "method must be a string");
      run.method = parse_method(value.get<std::string>());
    } else {
      throw Error(ErrorKind::config, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return run;
}

RunFile load_run_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_file(text.str());
}

Json to_json(const VortexConfig& config) {
  const auto centers = [](const std::vector<Center>& list) {
    Json out = Json::array();
    for (const Center& c : list) {
      out.push_back({{"x", c.position.x}, {"y", c.position.y}, {"multiplicity", c.multiplicity}});
    }
    return out;
  };
  return {{"poles", centers(config.poles())},
          {"zeros", centers(config.zeros())},
          {"N", config.pole_count()},
          {"M", config.zero_count()},
          {"varrho", config.varrho()},
          {"r0", config.r0()}};
}

std::string tool_version() { return SIGMA_VORTEX_VERSION; }

Json RunManifest::to_json(bool with_wall_clock) const {
  Json j = {{"subcommand", subcommand}, {"version", version},   {"seed", seed},
            {"config", config},         {"grid", grid},         {"solver", solver},
            {"outputs", outputs}};
  if (with_wall_clock) j["wall_clock"] = wall_clock;
  return j;
}

std::string RunManifest::csv_header() const {
  std::ostringstream out;
  const Json fields = to_json(false);
  for (const auto& [key, value] : fields.items()) out << "# " << key << ": " << value.dump() << "\n";
  return out.str();
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create output directory " + root_.string() + ": " + ec.message());
}

std::filesystem::path OutputDir::path_for(const std::string& name) const {
  const std::filesystem::path rel(name);
  if (rel.is_absolute() || rel.empty() || *rel.begin() == "..") {
    throw Error(ErrorKind::io, "output name escapes the output directory: " + name);
  }
  for (const auto& part : rel) {
    if (part == "..") throw Error(ErrorKind::io, "output name escapes the output directory: " + name);
  }
  return root_ / rel;
}

void OutputDir::write_text(const std::string& name, const std::string& text) const {
  const auto path = path_for(name);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << text;
}

void OutputDir::write_json(const std::string& name, const Json& value) const {
  write_text(name, value.dump(2) + "\n");
}

std::string format_csv(const RunManifest& manifest, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  out << manifest.csv_header();
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n" << std::setprecision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(trim(cell), &used));
        if (used != trim(cell).size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (rows.empty()) continue;  // column names
      throw Error(ErrorKind::io, path.string() + ":" + std::to_string(lineno) + ": non-numeric value");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace sigma_vortex
