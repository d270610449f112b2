#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cusp/cusped.hpp"

namespace cusp {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// One run = one fixture + window + policies. Parsed from a key = value text
/// file; every key can also be overridden from the command line.
struct RunConfig {
  std::string fixture = "FIX-Z2-SINGLE";
  int radius = 10;
  int depth = 5;
  std::optional<int> fixed_delta;  // empty: estimate
  std::uint64_t seed = 1;
  std::vector<std::string> lemmas;  // empty: every lemma applicable to the fixture
  long long samples = 300;
  std::size_t max_vertices = 4'000'000;
  int master_horizon = -1;  // -1: automatic (certificate limit)
  std::string out;          // empty: stdout
  std::string format = "json";
  B2Mode b2 = B2Mode::Intrinsic;
  std::string exact = "auto";  // auto | on | off
  bool timings = false;
  // estimation and sweep knobs
  long long delta_quadruples = 200'000;
  int delta_max_sources = 160;
  int delta_max_level = -1;
  int dagger_nmax = 64;
  int dagger_delta = 1;
  std::vector<int> k_values = {-1, 0, 1, 2};
  int excursion_steps = 6;
  int offset_lo = 1;
  int offset_hi = 8;
  int sweep_level = -1;  // -1: use the delta estimate

  bool use_exact(bool available) const {
    if (exact == "on") return true;
    if (exact == "off") return false;
    return available;
  }
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

/// Deterministic digest of the effective configuration (stamped into reports).
std::string config_digest(const RunConfig& cfg);

/// Canonical key = value rendering (also the digest input).
std::string render_config(const RunConfig& cfg);

}  // namespace cusp
