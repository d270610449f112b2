#pragma once

#include <string>
#include <vector>

#include "cusp/config.hpp"
#include "cusp/metric.hpp"
#include "cusp/report.hpp"
#include "cusp/surgery.hpp"

namespace cusp {

/// Lemma identifiers the verify subcommand accepts for a fixture.
std::vector<std::string> applicable_lemmas(const std::string& fixture);

HoroballGraph make_horoball_fixture(const std::string& name, int depth_cap);

/// Builds the scene for a cusped fixture: graph, master field, providers and
/// the resolved delta (estimate unless fixed).
Scene build_scene(const RunConfig& cfg);

/// Runs the configured lemma list in dependency order (delta first) and
/// assembles the suite report. Deterministic under a fixed seed.
SuiteReport run_suite(const RunConfig& cfg);

std::string emit(const SuiteReport& report, const std::string& format);

}  // namespace cusp
