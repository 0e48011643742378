#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace mogp {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  double millis = 0.0;
};

// Replaceable pieces, so a test can run the suites against a deliberately
// broken formula and see which check catches it.
struct SelftestHooks {
  std::function<double(int m, double xi, double epsilon_star, int p)> delta_p;
};

struct SelftestReport {
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
  // One JSON object per line: suite, name, passed, detail, millis.
  std::string json_lines() const;
};

// Suites: lemmas, pspin, ksat, bounds, all. Fixed seeds throughout.
// Throws DomainError for an unknown suite name.
SelftestReport selftest(std::string_view suite, const SelftestHooks& hooks = {});

const std::vector<std::string>& selftest_suites();

}  // namespace mogp
