#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cusp {

/// One offending instance of a checked property.
struct Violation {
  std::string kind;
  std::string detail;
  std::vector<std::pair<std::string, long long>> numbers;
};

/// Outcome of one certified property run. `skipped_uncertified` counts
/// instances whose hypotheses or conclusions could not be decided from
/// certified distances; they are never guessed and never counted as failures.
struct LemmaReport {
  std::string lemma;
  std::string instance;
  int delta = 0;
  long long checked = 0;
  long long skipped_uncertified = 0;
  std::vector<Violation> violations;
  std::vector<std::pair<std::string, long long>> constants_observed;
  std::vector<std::string> notes;
  long long wall_time_ms = 0;

  bool passed() const { return violations.empty(); }
  void note(std::string text) { notes.push_back(std::move(text)); }
  void constant(const std::string& key, long long value) { constants_observed.emplace_back(key, value); }
  void violation(std::string kind, std::string detail,
                 std::vector<std::pair<std::string, long long>> numbers = {}) {
    violations.push_back({std::move(kind), std::move(detail), std::move(numbers)});
  }
};

struct DeltaEstimateReport {
  std::string instance;
  int delta_hat = 0;
  long long doubled_defect_max = 0;
  long long quadruples_checked = 0;
  long long quadruples_skipped = 0;
  long long pool_size = 0;
  bool exhaustive = false;
};

struct SuiteReport {
  std::string schema_version = "1";
  std::string tool = "cuspcert";
  std::string config_digest;
  std::uint64_t seed = 0;
  std::vector<DeltaEstimateReport> delta_estimates;
  std::vector<LemmaReport> reports;
  long long total_checked = 0;
  long long total_skipped = 0;
  long long total_violations = 0;
  long long failed_reports = 0;

  void finalize();
  /// 0: all pass; 1: violations; 2: nothing checked anywhere (inconclusive only)
  int exit_code() const;
};

std::string to_json(const LemmaReport& r);
std::string to_json(const SuiteReport& r);
std::string to_csv(const SuiteReport& r);
std::string to_text(const SuiteReport& r);

}  // namespace cusp
