// Command-line driver: run, sweep, plot and verify experiments.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error, 3 invariant
// violation (verify --strict).

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dyncc/harness.hpp"

namespace {

struct Flag {
  const char* key;
  const char* help;
};

// Long options and config-file keys share one table.
constexpr Flag kFlags[] = {
    {"input", "input graph: sbm | snap"},
    {"n", "SBM vertex count"},
    {"k", "SBM community count"},
    {"p", "SBM intra-community edge probability"},
    {"q", "SBM inter-community edge probability"},
    {"snap-path", "SNAP edge-list file"},
    {"mode", "update stream: random | targeted"},
    {"p-del", "deletion probability"},
    {"updates", "stream length"},
    {"eps", "decomposition parameter"},
    {"eps-lo", "sweep lower bound"},
    {"eps-hi", "sweep upper bound"},
    {"eps-step", "sweep step"},
    {"sweep-horizon", "updates per sweep point"},
    {"checkpoint-every", "updates between checkpoints"},
    {"seeds", "comma-separated seed list"},
    {"output-dir", "directory for CSV output"},
    {"timing", "record wall_time_ns (true | false)"},
    {"sdd-mode", "exact | sampled"},
    {"c-merge", "merge-test sample constant"},
    {"c-fail", "merge-test fail constant"},
    {"c-split", "split-test sample constant"},
    {"c-local", "local decomposition sample constant"},
};

std::string fmt6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic correlation clustering via sparse-dense decomposition"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key=value file; flags override it");
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  for (const Flag& f : kFlags) {
    options.emplace_back(f.key, app.add_option(std::string("--") + f.key, values[f.key], f.help));
  }

  auto* run = app.add_subcommand("run", "run the experiment for every seed");
  auto* sweep = app.add_subcommand("sweep", "search eps over [eps-lo, eps-hi]");
  auto* verify = app.add_subcommand("verify", "check the decomposition invariants at checkpoints");
  bool strict = false;
  verify->add_flag("--strict", strict, "stop with exit code 3 at the first violation");
  auto* plot = app.add_subcommand("plot", "render checkpoint CSVs to an SVG chart");
  std::vector<std::string> csvs;
  std::string svg_out = "plot.svg";
  plot->add_option("csv", csvs, "checkpoint CSV files")->required()->check(CLI::ExistingFile);
  plot->add_option("-o,--out", svg_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  dyncc::ExperimentConfig config;
  try {
    if (!config_path.empty()) dyncc::apply_config_file(config, config_path);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) dyncc::apply_config_entry(config, key, values[key]);
    }
    config.strict = strict;
    config.validate();
  } catch (const dyncc::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (run->parsed()) {
      for (const auto& r : dyncc::run_experiment(config)) {
        std::cout << "seed " << r.seed << ": n=" << r.n << " m=" << r.m
                  << " updates=" << r.updates;
        if (!r.rows.empty()) {
          std::cout << " final sdd_ratio=" << fmt6(r.rows.back().sdd_ratio)
                    << " pivot_ratio=" << fmt6(r.rows.back().pivot_ratio);
        }
        std::cout << " ops/update="
                  << fmt6(r.updates ? static_cast<double>(r.totals.oracle_ops) / r.updates : 0)
                  << " -> " << (config.output_dir / ("run_seed" + std::to_string(r.seed) + ".csv")).string()
                  << '\n';
      }
    } else if (sweep->parsed()) {
      const auto result = dyncc::epsilon_sweep(config);
      std::cout << "eps,mean_sdd_ratio,mean_pivot_ratio\n";
      for (const auto& p : result.points) {
        std::cout << p.eps << ',' << fmt6(p.mean_sdd_ratio) << ',' << fmt6(p.mean_pivot_ratio) << '\n';
      }
      std::cout << "best eps: " << result.best_eps << '\n';
    } else if (verify->parsed()) {
      std::size_t failing = 0;
      for (std::uint64_t seed : config.seeds) {
        const auto r = dyncc::run_single(config, seed, /*verify=*/true);
        std::cout << "seed " << seed << ": " << r.rows.size() << " checkpoints, "
                  << r.invariant_failures << " with violations\n";
        failing += r.invariant_failures > 0 ? 1 : 0;
      }
      std::cout << failing << " of " << config.seeds.size() << " seeds with violations\n";
    } else if (plot->parsed()) {
      std::vector<std::filesystem::path> paths(csvs.begin(), csvs.end());
      dyncc::emit_plot(paths, svg_out);
      std::cout << "wrote " << svg_out << '\n';
    }
  } catch (const dyncc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == dyncc::ErrorCode::kInvariantViolation ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
