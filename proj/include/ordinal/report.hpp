#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ordinal {

/// Outcome of a property suite. Violations are data, not exceptions: a report
/// with findings is still a valid result.
struct Report {
  Report() = default;
  explicit Report(std::string name) : suite(std::move(name)) {}

  std::string suite;
  std::size_t checks = 0;
  std::vector<std::string> violations;

  /// Records one check; `describe` is only invoked on failure.
  template <typename Describe>
  bool expect(bool ok, Describe&& describe) {
    ++checks;
    if (!ok) violations.push_back(std::forward<Describe>(describe)());
    return ok;
  }

  bool ok() const noexcept { return violations.empty(); }

  void merge(const Report& other) {
    checks += other.checks;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

/// "suite <name>: checks=<n> violations=<v>" followed by one line per violation.
inline void write_report(std::ostream& out, const Report& report) {
  out << "suite " << report.suite << ": checks=" << report.checks
      << " violations=" << report.violations.size() << '\n';
  for (const auto& v : report.violations) out << "  violation: " << v << '\n';
}

}  // namespace ordinal
