#pragma once

// Verification suites behind the CLI `verify` command. Each suite evaluates a
// list of named residuals against tolerances; a check passes when value <= tol.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "instanton/rep.hpp"

namespace instanton::verify {

struct Check {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass() const { return value <= tol; }
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  std::map<std::string, Mat> matrices;  // residual tables, printed in scientific notation
  bool pass() const;
  std::string text() const;
  nlohmann::json json() const;
  void append(const Report& other);
};

struct Config {
  std::uint64_t seed = 0;
  int k = 3;
  cd tau{1.0, 0.0};
  int trials = 10;
  std::map<std::string, double> tol;   // overrides, keyed by check name
  std::optional<rep::AdhmData> data;   // used instead of a sample where meaningful
};

const std::vector<std::string>& suite_names();
/// Default tolerance of a check (overridden by Config::tol).
double default_tolerance(const std::string& check);
/// Throws PreconditionError for an unknown suite name.
Report run(const std::string& suite, const Config& cfg);

}  // namespace instanton::verify
