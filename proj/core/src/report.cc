#include "mmspace/report.h"

#include <algorithm>

namespace mmspace {

std::string_view check_status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kDiagnostic: return "diagnostic";
  }
  return "unknown";
}

bool CheckReport::passed() const { return count(CheckStatus::kFail) == 0; }

int CheckReport::count(CheckStatus status) const {
  return static_cast<int>(std::count_if(
      checks.begin(), checks.end(),
      [status](const Check& c) { return c.status == status; }));
}

void CheckReport::append(const CheckReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void CheckReport::sort_checks() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.name < b.name; });
}

const Check* CheckReport::find(std::string_view name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json report_to_json(const CheckReport& report, bool include_runtime) {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : report.checks) {
    nlohmann::json item = {{"name", c.name},
                           {"status", std::string(check_status_name(c.status))},
                           {"measured", nlohmann::json::object()}};
    for (const auto& [key, value] : c.measured) item["measured"][key] = value;
    if (c.witness) item["witness"] = *c.witness;
    checks.push_back(std::move(item));
  }
  nlohmann::json doc = {{"suite", report.suite},
                        {"checks", std::move(checks)},
                        {"seed", report.seed},
                        {"status", report.passed() ? "pass" : "fail"},
                        {"counts",
                         {{"pass", report.count(CheckStatus::kPass)},
                          {"fail", report.count(CheckStatus::kFail)},
                          {"diagnostic", report.count(CheckStatus::kDiagnostic)}}}};
  if (include_runtime) doc["runtime_ms"] = report.runtime_ms;
  return doc;
}

}  // namespace mmspace
