#pragma once

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace blackwell {

enum class Relation { at_most, at_least };

/// One reproduced claim. `pass` holds when `computed` lies on the right side
/// of `target` within `tolerance` and every side condition held.
struct CheckResult {
  std::string id;
  std::string name;
  /// The claim being checked, in words.
  std::string statement;
  double computed = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::at_most;
  /// Secondary quantities; part of the serialized report.
  std::vector<std::pair<std::string, double>> details;
  bool pass = false;

  /// Wall-clock time and budget. Not serialized, so reports stay identical
  /// across runs.
  double seconds = 0.0;
  double runtime_limit = 0.0;
};

struct VerifyConfig {
  std::uint64_t seed = 20240611;
  /// Multiplies every tolerance, including the Monte Carlo band width.
  double tolerance_scale = 1.0;
  /// Random tuples and plays per tuple for the Monte Carlo comparison.
  std::size_t oracle_tuples = 200;
  std::size_t oracle_plays = 100000;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool overall = false;
};

struct CheckDefinition {
  std::string id;
  std::string name;
  double runtime_limit = 0.0;
  std::function<CheckResult(const VerifyConfig&)> run;
};

/// The acceptance checks in report order. Each run fills `seconds` and
/// `runtime_limit`.
const std::vector<CheckDefinition>& verification_checks();

/// Runs every check. Throws only if a built-in resource is missing.
VerificationReport run_verification(const VerifyConfig& config);

/// Human-readable report; numbers use 12 significant digits.
std::string report_to_text(const VerificationReport& report);

/// The same report as a JSON document with identical numeric values.
nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace blackwell
