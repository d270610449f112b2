#include "cusp/config.hpp"

#include <fstream>
#include <sstream>

namespace cusp {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw ConfigError("bad integer for '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("bad boolean for '" + key + "': " + value);
}

}  // namespace

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "fixture" || key == "group") {
    cfg.fixture = value;
  } else if (key == "radius") {
    cfg.radius = static_cast<int>(parse_int(key, value));
  } else if (key == "depth") {
    cfg.depth = static_cast<int>(parse_int(key, value));
  } else if (key == "delta") {
    if (value == "estimate") {
      cfg.fixed_delta.reset();
    } else {
      cfg.fixed_delta = static_cast<int>(parse_int(key, value));
    }
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "lemmas" || key == "lemma") {
    cfg.lemmas = value == "all" ? std::vector<std::string>{} : split(value, ',');
  } else if (key == "samples") {
    cfg.samples = parse_int(key, value);
  } else if (key == "max_vertices") {
    cfg.max_vertices = static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "master_horizon") {
    cfg.master_horizon = static_cast<int>(parse_int(key, value));
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    if (value != "json" && value != "csv" && value != "text") throw ConfigError("format must be json|csv|text");
    cfg.format = value;
  } else if (key == "b2_metric") {
    if (value == "intrinsic") {
      cfg.b2 = B2Mode::Intrinsic;
    } else if (value == "induced") {
      cfg.b2 = B2Mode::InducedWindow;
    } else {
      throw ConfigError("b2_metric must be intrinsic|induced");
    }
  } else if (key == "exact") {
    if (value != "auto" && value != "on" && value != "off") throw ConfigError("exact must be auto|on|off");
    cfg.exact = value;
  } else if (key == "timings") {
    cfg.timings = parse_bool(key, value);
  } else if (key == "delta_quadruples") {
    cfg.delta_quadruples = parse_int(key, value);
  } else if (key == "delta_max_sources") {
    cfg.delta_max_sources = static_cast<int>(parse_int(key, value));
  } else if (key == "delta_max_level") {
    cfg.delta_max_level = static_cast<int>(parse_int(key, value));
  } else if (key == "dagger_nmax") {
    cfg.dagger_nmax = static_cast<int>(parse_int(key, value));
  } else if (key == "dagger_delta") {
    cfg.dagger_delta = static_cast<int>(parse_int(key, value));
  } else if (key == "k_values") {
    cfg.k_values.clear();
    for (const std::string& item : split(value, ',')) {
      cfg.k_values.push_back(static_cast<int>(parse_int(key, item)));
    }
  } else if (key == "excursion_steps") {
    cfg.excursion_steps = static_cast<int>(parse_int(key, value));
  } else if (key == "offset_lo") {
    cfg.offset_lo = static_cast<int>(parse_int(key, value));
  } else if (key == "offset_hi") {
    cfg.offset_hi = static_cast<int>(parse_int(key, value));
  } else if (key == "sweep_level") {
    cfg.sweep_level = static_cast<int>(parse_int(key, value));
  } else {
    throw ConfigError("unknown configuration key: " + key);
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "fixture = " << cfg.fixture << "\n";
  os << "radius = " << cfg.radius << "\n";
  os << "depth = " << cfg.depth << "\n";
  os << "delta = " << (cfg.fixed_delta ? std::to_string(*cfg.fixed_delta) : std::string("estimate")) << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "lemmas = ";
  if (cfg.lemmas.empty()) {
    os << "all";
  } else {
    for (std::size_t i = 0; i < cfg.lemmas.size(); ++i) os << (i ? "," : "") << cfg.lemmas[i];
  }
  os << "\n";
  os << "samples = " << cfg.samples << "\n";
  os << "max_vertices = " << cfg.max_vertices << "\n";
  os << "master_horizon = " << cfg.master_horizon << "\n";
  os << "format = " << cfg.format << "\n";
  os << "b2_metric = " << (cfg.b2 == B2Mode::Intrinsic ? "intrinsic" : "induced") << "\n";
  os << "exact = " << cfg.exact << "\n";
  os << "timings = " << (cfg.timings ? "on" : "off") << "\n";
  os << "delta_quadruples = " << cfg.delta_quadruples << "\n";
  os << "delta_max_sources = " << cfg.delta_max_sources << "\n";
  os << "delta_max_level = " << cfg.delta_max_level << "\n";
  os << "dagger_nmax = " << cfg.dagger_nmax << "\n";
  os << "dagger_delta = " << cfg.dagger_delta << "\n";
  os << "k_values = ";
  for (std::size_t i = 0; i < cfg.k_values.size(); ++i) os << (i ? "," : "") << cfg.k_values[i];
  os << "\n";
  os << "excursion_steps = " << cfg.excursion_steps << "\n";
  os << "offset_lo = " << cfg.offset_lo << "\n";
  os << "offset_hi = " << cfg.offset_hi << "\n";
  os << "sweep_level = " << cfg.sweep_level << "\n";
  return os.str();
}

std::string config_digest(const RunConfig& cfg) {
  // FNV-1a over the canonical rendering
  const std::string text = render_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace cusp
