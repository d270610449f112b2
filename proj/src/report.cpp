#include "cusp/report.hpp"

#include <sstream>

#include "json.hpp"

namespace cusp {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json lemma_json(const LemmaReport& r) {
  ordered_json j;
  j["lemma"] = r.lemma;
  j["instance"] = r.instance;
  j["delta"] = r.delta;
  j["pairs_checked"] = r.checked;
  j["pairs_skipped_uncertified"] = r.skipped_uncertified;
  ordered_json viols = ordered_json::array();
  for (const Violation& v : r.violations) {
    ordered_json jv;
    jv["kind"] = v.kind;
    jv["detail"] = v.detail;
    ordered_json nums;
    for (const auto& [k, val] : v.numbers) nums[k] = val;
    jv["numbers"] = nums;
    viols.push_back(jv);
  }
  j["violations"] = viols;
  ordered_json consts;
  for (const auto& [k, val] : r.constants_observed) consts[k] = val;
  j["constants_observed"] = consts;
  j["notes"] = r.notes;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

}  // namespace

void SuiteReport::finalize() {
  total_checked = total_skipped = total_violations = failed_reports = 0;
  for (const LemmaReport& r : reports) {
    total_checked += r.checked;
    total_skipped += r.skipped_uncertified;
    total_violations += static_cast<long long>(r.violations.size());
    if (!r.passed()) ++failed_reports;
  }
}

int SuiteReport::exit_code() const {
  if (failed_reports > 0) return 1;
  if (total_checked == 0 && !reports.empty()) return 2;
  return 0;
}

std::string to_json(const LemmaReport& r) { return lemma_json(r).dump(2) + "\n"; }

std::string to_json(const SuiteReport& r) {
  ordered_json j;
  j["schema_version"] = r.schema_version;
  j["tool"] = r.tool;
  j["config_digest"] = r.config_digest;
  j["seed"] = r.seed;
  ordered_json deltas = ordered_json::array();
  for (const DeltaEstimateReport& d : r.delta_estimates) {
    ordered_json jd;
    jd["instance"] = d.instance;
    jd["delta_hat"] = d.delta_hat;
    jd["doubled_defect_max"] = d.doubled_defect_max;
    jd["quadruples_checked"] = d.quadruples_checked;
    jd["quadruples_skipped"] = d.quadruples_skipped;
    jd["pool_size"] = d.pool_size;
    jd["exhaustive"] = d.exhaustive;
    deltas.push_back(jd);
  }
  j["delta_estimates"] = deltas;
  ordered_json reps = ordered_json::array();
  for (const LemmaReport& lr : r.reports) reps.push_back(lemma_json(lr));
  j["reports"] = reps;
  ordered_json totals;
  totals["checked"] = r.total_checked;
  totals["skipped_uncertified"] = r.total_skipped;
  totals["violations"] = r.total_violations;
  totals["failed_reports"] = r.failed_reports;
  j["totals"] = totals;
  return j.dump(2) + "\n";
}

std::string to_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "lemma,instance,delta,kind,detail\n";
  for (const LemmaReport& lr : r.reports) {
    for (const Violation& v : lr.violations) {
      std::string detail = v.detail;
      for (char& c : detail) {
        if (c == ',' || c == '\n') c = ';';
      }
      os << lr.lemma << ',' << lr.instance << ',' << lr.delta << ',' << v.kind << ',' << detail << '\n';
    }
  }
  return os.str();
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << r.tool << " schema " << r.schema_version << " seed " << r.seed << "\n";
  for (const DeltaEstimateReport& d : r.delta_estimates) {
    os << "delta estimate [" << d.instance << "]: delta_hat=" << d.delta_hat
       << " doubled_defect=" << d.doubled_defect_max << " quadruples=" << d.quadruples_checked
       << (d.exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
  }
  for (const LemmaReport& lr : r.reports) {
    os << (lr.passed() ? "PASS " : "FAIL ") << lr.lemma << " [" << lr.instance << "]"
       << " delta=" << lr.delta << " checked=" << lr.checked << " skipped=" << lr.skipped_uncertified
       << " violations=" << lr.violations.size() << "\n";
    for (const Violation& v : lr.violations) {
      os << "  ! " << v.kind << ": " << v.detail << "\n";
    }
    for (const std::string& n : lr.notes) os << "  - " << n << "\n";
  }
  os << "totals: checked=" << r.total_checked << " skipped=" << r.total_skipped
     << " violations=" << r.total_violations << " failed_reports=" << r.failed_reports << "\n";
  return os.str();
}

}  // namespace cusp
