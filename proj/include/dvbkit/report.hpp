// Verification reports: one named line per check, deterministic order.
#pragma once

#include <string>
#include <vector>

namespace dvbkit {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;  // residual summary or witness, empty when clean
};

struct Report {
  Report() = default;
  explicit Report(std::string suite_name) : suite(std::move(suite_name)) {}

  std::string suite;
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  void absorb(const Report& other, const std::string& prefix = "") {
    for (const auto& c : other.checks)
      checks.push_back({prefix.empty() ? c.name : prefix + "/" + c.name,
                        c.pass, c.detail});
  }
};

}  // namespace dvbkit
