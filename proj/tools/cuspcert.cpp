#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cusp/suite.hpp"

namespace {

using cusp::RunConfig;

struct CliValues {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string fixture;
  int radius = 0;
  int depth = 0;
  std::string delta;
  std::uint64_t seed = 0;
  long long samples = 0;
  std::size_t max_vertices = 0;
  std::string out;
  std::string format;
  bool timings = false;
  std::string lemmas;
};

void add_common_options(CLI::App* cmd, CliValues& v) {
  cmd->add_option("--config", v.config_path, "key = value configuration file");
  cmd->add_option("--set", v.overrides, "extra key=value overrides")->take_all();
  cmd->add_option("--group,--fixture", v.fixture, "fixture identifier (FIX-...)");
  cmd->add_option("--radius", v.radius, "base Cayley ball radius R");
  cmd->add_option("--depth", v.depth, "horoball depth cap D");
  cmd->add_option("--delta", v.delta, "hyperbolicity constant (number or 'estimate')");
  cmd->add_option("--seed", v.seed, "master seed");
  cmd->add_option("--samples", v.samples, "samples per randomized sweep");
  cmd->add_option("--max-vertices", v.max_vertices, "explicit exploration cap");
  cmd->add_option("--out", v.out, "output path (default stdout)");
  cmd->add_option("--format", v.format, "json|csv|text");
  cmd->add_flag("--timings", v.timings, "record wall times (breaks byte determinism)");
  cmd->add_option("--lemma", v.lemmas, "comma separated lemma list");
}

RunConfig finalize_config(const CliValues& v, CLI::App* cmd) {
  RunConfig cfg;
  if (!v.config_path.empty()) cfg = cusp::parse_config_file(v.config_path);
  if (cmd->count("--group") || cmd->count("--fixture")) cfg.fixture = v.fixture;
  if (cmd->count("--radius")) cfg.radius = v.radius;
  if (cmd->count("--depth")) cfg.depth = v.depth;
  if (cmd->count("--delta")) cusp::apply_override(cfg, "delta", v.delta);
  if (cmd->count("--seed")) cfg.seed = v.seed;
  if (cmd->count("--samples")) cfg.samples = v.samples;
  if (cmd->count("--max-vertices")) cfg.max_vertices = v.max_vertices;
  if (cmd->count("--out")) cfg.out = v.out;
  if (cmd->count("--format")) cusp::apply_override(cfg, "format", v.format);
  if (cmd->count("--timings")) cfg.timings = v.timings;
  if (cmd->count("--lemma")) cusp::apply_override(cfg, "lemmas", v.lemmas);
  for (const std::string& kv : v.overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) throw cusp::ConfigError("--set expects key=value, got: " + kv);
    cusp::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

int write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << cfg.out << "\n";
    return 3;
  }
  out << payload;
  return 0;
}

int emit_suite(const RunConfig& cfg, const cusp::SuiteReport& suite) {
  const int io = write_output(cfg, cusp::emit(suite, cfg.format));
  if (io != 0) return io;
  return suite.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspcert: builds truncated cusped spaces over catalog groups and certifies their metric "
               "properties against explicit oracles"};
  app.require_subcommand(1);

  CliValues v;

  CLI::App* cmd_build = app.add_subcommand("build", "build a fixture window and print its statistics");
  CLI::App* cmd_delta = app.add_subcommand("delta", "estimate the four-point hyperbolicity constant");
  CLI::App* cmd_verify = app.add_subcommand("verify", "run one certified lemma sweep");
  std::string lemma_id;
  cmd_verify->add_option("lemma-id", lemma_id, "lemma identifier")->required();
  CLI::App* cmd_dagger = app.add_subcommand("ddagger", "search connecting paths for close vertex pairs");
  CLI::App* cmd_compress = app.add_subcommand("compress", "sample paths and compress them below a depth");
  CLI::App* cmd_export = app.add_subcommand("export", "write the window as an edge list or DOT file");
  std::string export_format = "edges";
  cmd_export->add_option("--as", export_format, "edges|dot");
  CLI::App* cmd_all = app.add_subcommand("all", "run every applicable lemma");

  for (CLI::App* cmd : {cmd_build, cmd_delta, cmd_verify, cmd_dagger, cmd_compress, cmd_export, cmd_all}) {
    add_common_options(cmd, v);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    RunConfig run = finalize_config(v, active);

    if (active == cmd_build) {
      if (cusp::is_horoball_fixture(run.fixture)) {
        cusp::HoroballGraph h = cusp::make_horoball_fixture(run.fixture, run.depth);
        std::ostringstream os;
        os << "fixture " << run.fixture << "\n";
        os << "level graph vertices " << h.level_graph().vertex_count() << " diameter "
           << h.level_graph().diameter() << "\n";
        os << "depth cap " << h.depth_cap() << " vertices " << h.vertex_count() << "\n";
        os << "min safe depth " << h.min_safe_depth() << "\n";
        return write_output(run, os.str());
      }
      cusp::Scene scene = cusp::build_scene(run);
      std::ostringstream os;
      os << "fixture " << run.fixture << " R=" << run.radius << " D=" << run.depth << "\n";
      os << "generators " << scene.graph->group().generator_count() << " peripherals "
         << scene.graph->group().peripheral_count() << "\n";
      os << "master field: explored " << scene.master->values.size() << " cert_limit "
         << scene.master->cert_limit() << "\n";
      os << "delta_hat " << scene.delta_report.delta_hat << " (delta " << scene.delta << ")\n";
      os << "horoballs visible at level " << scene.delta << ": "
         << scene.visible_horoballs(scene.delta).size() << "\n";
      return write_output(run, os.str());
    }

    if (active == cmd_delta) {
      cusp::Scene scene = cusp::build_scene(run);
      cusp::SuiteReport suite;
      suite.config_digest = cusp::config_digest(run);
      suite.seed = run.seed;
      suite.delta_estimates.push_back(scene.delta_report);
      suite.finalize();
      return emit_suite(run, suite);
    }

    if (active == cmd_verify) {
      run.lemmas = {lemma_id};
      return emit_suite(run, cusp::run_suite(run));
    }

    if (active == cmd_dagger) {
      run.lemmas = {"connecting-path"};
      return emit_suite(run, cusp::run_suite(run));
    }

    if (active == cmd_compress) {
      run.lemmas = {"compress"};
      return emit_suite(run, cusp::run_suite(run));
    }

    if (active == cmd_export) {
      std::ostringstream os;
      if (cusp::is_horoball_fixture(run.fixture)) {
        cusp::HoroballGraph h = cusp::make_horoball_fixture(run.fixture, run.depth);
        if (export_format == "dot") {
          h.write_dot(os);
        } else {
          h.write_edge_list(os);
        }
      } else {
        cusp::CuspedGraph g = cusp::make_cusped_fixture(run.fixture, run.radius, run.depth, run.b2);
        if (export_format == "dot") {
          g.write_dot(os);
        } else {
          g.write_edge_list(os);
        }
      }
      return write_output(run, os.str());
    }

    // all
    return emit_suite(run, cusp::run_suite(run));
  } catch (const cusp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
