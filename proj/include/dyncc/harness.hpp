#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dyncc/maintainer.hpp"
#include "dyncc/sdd.hpp"
#include "dyncc/streams.hpp"

namespace dyncc {

enum class InputKind { kSbm, kSnap };

struct ExperimentConfig {
  InputKind input = InputKind::kSbm;
  SbmSpec sbm;
  std::filesystem::path snap_path;
  StreamSpec stream;
  SddParams sdd;
  double eps_lo = 0.3;
  double eps_hi = 0.6;
  double eps_step = 0.025;
  std::size_t sweep_horizon = 2'000;  // updates per sweep point
  std::size_t checkpoint_every = 100;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = ".";
  bool record_time = true;  // false writes 0 in wall_time_ns
  bool strict = false;      // verify: stop at the first violation

  void validate() const;
};

/// Reads key=value lines ('#' comments, blank lines allowed) onto `config`.
/// Keys match the CLI long options with '-' or '_' separators.
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

struct CheckpointRow {
  std::uint64_t update_index = 0;
  std::uint64_t sdd_cost = 0;
  std::uint64_t pivot_cost = 0;
  std::uint64_t singleton_cost = 0;
  double sdd_ratio = 0;
  double pivot_ratio = 0;
  std::uint64_t oracle_ops = 0;  // cumulative
  std::uint64_t wall_time_ns = 0;  // cumulative time inside apply_update
};

struct RunResult {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;               // edges of the input graph
  std::size_t updates = 0;         // updates actually applied
  std::vector<CheckpointRow> rows;
  CumulativeStats totals;
  std::size_t invariant_failures = 0;  // checkpoints with violations (verify only)
};

/// Seeds for the independent random sources of one run.
struct SeedSet {
  std::uint64_t input, stream, maintainer, pivot, adversary;
  static SeedSet derive(std::uint64_t seed);
};

EdgeList build_input(const ExperimentConfig& config, std::uint64_t seed);

/// One seed end to end. `verify` runs the exact invariant checks at every
/// checkpoint; in strict mode the first violation throws kInvariantViolation.
RunResult run_single(const ExperimentConfig& config, std::uint64_t seed,
                     bool verify = false);

void write_csv(std::ostream& out, const std::vector<CheckpointRow>& rows);
std::vector<CheckpointRow> read_csv(std::istream& in);

/// Every configured seed; writes <output_dir>/run_seed<seed>.csv per seed.
std::vector<RunResult> run_experiment(const ExperimentConfig& config);

struct SweepPoint {
  double eps = 0;
  double mean_sdd_ratio = 0;
  double mean_pivot_ratio = 0;
};

struct SweepResult {
  double best_eps = 0;
  std::vector<SweepPoint> points;
};

/// Grid lo, lo+step, ..., hi (inclusive, up to rounding).
std::vector<double> sweep_grid(double lo, double hi, double step);

/// Truncated runs (sweep_horizon updates) per grid point; the smallest mean
/// sdd_ratio wins, ties to the smaller eps. Writes <output_dir>/sweep.csv.
SweepResult epsilon_sweep(const ExperimentConfig& config);

/// Line chart of sdd_ratio and pivot_ratio against update_index. One input
/// gives two series; several give one series per input and metric plus a
/// mean line per metric.
void emit_plot(const std::vector<std::filesystem::path>& csvs,
               const std::filesystem::path& out);
std::string render_plot(const std::vector<std::vector<CheckpointRow>>& runs);

}  // namespace dyncc
