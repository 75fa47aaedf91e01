#pragma once

#include <string>
#include <vector>

namespace qbell {

struct CheckResult {
  std::string name;
  bool passed;
  double max_deviation;  // worst observed |actual - expected| (checks define it)
  double elapsed_seconds;
  std::string detail;
};

struct VerifyOptions {
  std::string only;  // substring filter on check names; empty runs everything
  bool inject_table_corruption = false;  // negative control for the golden check
};

/// The full acceptance battery, one CheckResult per criterion.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

/// One line per check: "PASS <name> max_dev=<d> time=<t>s  <detail>".
std::string render_report(const std::vector<CheckResult>& results);

}  // namespace qbell
