#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigma_vortex/io.hpp"

namespace sigma_vortex {

struct VerifyOptions {
  /// Empty means every suite.
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  int threads = 1;
  std::size_t radial_nodes = 1000;
  /// Mutation hook: flip the sign of the bump term in g_beta.
  bool inject_g_sign_fault = false;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string summary;
  Json metrics = Json::object();
};

const std::vector<std::string>& suite_names();

/// Runs on the reference configuration (two coincident poles at the origin).
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

Json to_json(const std::vector<SuiteResult>& results);

}  // namespace sigma_vortex
