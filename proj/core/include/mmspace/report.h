#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmspace {

enum class CheckStatus { kPass, kFail, kDiagnostic };

std::string_view check_status_name(CheckStatus status);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::map<std::string, double> measured;
  std::optional<nlohmann::json> witness;
};

// Outcome of a group of checks. A report passes iff none of its checks
// failed; diagnostics never fail a report.
struct CheckReport {
  std::string suite;
  std::vector<Check> checks;
  uint64_t seed = 0;
  int64_t runtime_ms = 0;

  bool passed() const;
  int count(CheckStatus status) const;
  void append(const CheckReport& other);
  // Sorts checks by name (stable) so that serialization does not depend on
  // the order in which checks were produced.
  void sort_checks();
  const Check* find(std::string_view name) const;
};

// Serializes with checks in their current order. `include_runtime` controls
// whether the (nondeterministic) runtime_ms field is emitted.
nlohmann::json report_to_json(const CheckReport& report,
                              bool include_runtime = true);

}  // namespace mmspace
